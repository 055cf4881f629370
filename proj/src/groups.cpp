#include "nqfa/groups.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace nqfa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  return t;
}

// Dihedral group of order 2n: element r^k s^f at index k + n*f, with
// s r s = r^{-1}.
std::vector<std::vector<int>> dihedral_table(int n) {
  int ord = 2 * n;
  std::vector<std::vector<int>> t(static_cast<size_t>(ord), std::vector<int>(static_cast<size_t>(ord)));
  auto idx = [n](int k, int f) { return ((k % n) + n) % n + n * f; };
  for (int k1 = 0; k1 < n; ++k1)
    for (int f1 = 0; f1 < 2; ++f1)
      for (int k2 = 0; k2 < n; ++k2)
        for (int f2 = 0; f2 < 2; ++f2)
          t[static_cast<size_t>(idx(k1, f1))][static_cast<size_t>(idx(k2, f2))] =
              idx(k1 + (f1 ? -k2 : k2), f1 ^ f2);
  return t;
}

// Quaternion group {1,-1,i,-i,j,-j,k,-k} at indices 0..7.
std::vector<std::vector<int>> quaternion_table() {
  // Represent q = (sign, axis) with axis in {1,i,j,k} = {0,1,2,3}.
  auto enc = [](int sign, int axis) { return 2 * axis + (sign < 0 ? 1 : 0); };
  auto mul_axis = [](int a, int b, int& sign) {
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    sign = sg[a][b];
    return ax[a][b];
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int sa = 1; sa >= -1; sa -= 2)
      for (int b = 0; b < 4; ++b)
        for (int sb = 1; sb >= -1; sb -= 2) {
          int sign;
          int axis = mul_axis(a, b, sign);
          t[static_cast<size_t>(enc(sa, a))][static_cast<size_t>(enc(sb, b))] =
              enc(sa * sb * sign, axis);
        }
  return t;
}

CMatrix rotation2(double angle) {
  CMatrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

CMatrix reflection2() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

std::vector<GroupIrrep> dihedral_irreps(const FiniteGroup& g, int n) {
  // one-dimensional characters plus the 2-dim representations r -> R(2*pi*m/n)
  std::vector<GroupIrrep> reps;
  auto make1 = [&](auto chi) {
    GroupIrrep rep;
    rep.dim = 1;
    for (int e = 0; e < g.order(); ++e) {
      CMatrix m(1, 1);
      m(0, 0) = chi(e % n, e / n);
      rep.matrices.push_back(m);
    }
    return rep;
  };
  reps.push_back(make1([](int, int) { return 1.0; }));
  reps.push_back(make1([](int, int f) { return f ? -1.0 : 1.0; }));
  if (n % 2 == 0) {
    reps.push_back(make1([](int k, int) { return k % 2 ? -1.0 : 1.0; }));
    reps.push_back(make1([](int k, int f) { return ((k + f) % 2) ? -1.0 : 1.0; }));
  }
  int two_dim_count = (n - (n % 2 == 0 ? 2 : 1)) / 2;
  for (int m = 1; m <= two_dim_count; ++m) {
    GroupIrrep rep;
    rep.dim = 2;
    for (int e = 0; e < g.order(); ++e) {
      int k = e % n, f = e / n;
      CMatrix mat = rotation2(kTwoPi * m * k / n);
      if (f) mat = mat * reflection2();
      rep.matrices.push_back(mat);
    }
    reps.push_back(rep);
  }
  return reps;
}

std::vector<GroupIrrep> quaternion_irreps(const FiniteGroup& g) {
  std::vector<GroupIrrep> reps;
  // four characters factoring through Q8 / {+-1}
  for (int ei = 1; ei >= -1; ei -= 2)
    for (int ej = 1; ej >= -1; ej -= 2) {
      GroupIrrep rep;
      rep.dim = 1;
      for (int e = 0; e < g.order(); ++e) {
        int axis = e / 2;
        double v[4] = {1.0, double(ei), double(ej), double(ei * ej)};
        CMatrix m(1, 1);
        m(0, 0) = v[axis];
        rep.matrices.push_back(m);
      }
      reps.push_back(rep);
    }
  // the 2-dim representation by Pauli-type matrices
  Cplx I(0, 1);
  CMatrix mi(2, 2), mj(2, 2);
  mi << I, 0, 0, -I;
  mj << 0, 1, -1, 0;
  GroupIrrep rep;
  rep.dim = 2;
  for (int e = 0; e < g.order(); ++e) {
    int axis = e / 2;
    double sign = (e % 2) ? -1.0 : 1.0;
    CMatrix m = axis == 0 ? identity(2) : (axis == 1 ? mi : (axis == 2 ? mj : CMatrix(mi * mj)));
    rep.matrices.push_back(sign * m);
  }
  reps.push_back(rep);
  return reps;
}

// Characters of an abelian group found by simultaneously diagonalizing the
// regular representation: a generic combination of the commuting translation
// operators separates the joint eigenvectors.
std::vector<GroupIrrep> abelian_characters(const FiniteGroup& g) {
  int n = g.order();
  auto left = [&](int s) {
    CMatrix l = zero(n, n);
    for (int t = 0; t < n; ++t) l(g.mul(s, t), t) = 1.0;
    return l;
  };
  Rng rng(0x9f3a);
  CMatrix generic = zero(n, n);
  std::vector<CMatrix> ls;
  for (int s = 0; s < n; ++s) {
    ls.push_back(left(s));
    generic += Cplx(rng.gauss(), rng.gauss()) * ls.back();
  }
  Eigen::ComplexEigenSolver<CMatrix> es(generic);
  std::vector<GroupIrrep> reps;
  for (int v = 0; v < n; ++v) {
    CVector vec = es.eigenvectors().col(v);
    GroupIrrep rep;
    rep.dim = 1;
    for (int s = 0; s < n; ++s) {
      // eigenvalue of the unitary L_s on this joint eigenvector
      Cplx lambda = vec.dot(ls[static_cast<size_t>(s)] * vec) / vec.squaredNorm();
      CMatrix m(1, 1);
      m(0, 0) = lambda / std::abs(lambda);
      rep.matrices.push_back(m);
    }
    reps.push_back(rep);
  }
  // canonical order: lexicographic on rounded character values
  std::sort(reps.begin(), reps.end(), [n](const GroupIrrep& a, const GroupIrrep& b) {
    for (int s = 0; s < n; ++s) {
      Cplx ca = a.character(s), cb = b.character(s);
      long ra = std::lround(ca.real() * 1e6), rb = std::lround(cb.real() * 1e6);
      if (ra != rb) return ra > rb;
      long ia = std::lround(ca.imag() * 1e6), ib = std::lround(cb.imag() * 1e6);
      if (ia != ib) return ia > ib;
    }
    return false;
  });
  return reps;
}

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(const std::vector<std::vector<int>>& table) {
  FiniteGroup g;
  int n = static_cast<int>(table.size());
  if (n == 0) throw Error("group table: empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error("group table: not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("group table: entry out of range");
  }
  g.order_ = n;
  g.table_ = table;
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int s = 0; s < n; ++s)
      if (g.mul(cand, s) != s || g.mul(s, cand) != s) { ok = false; break; }
    if (ok) { e = cand; break; }
  }
  if (e < 0) throw ValidationError("identity", 1.0, "no two-sided identity element");
  g.identity_ = e;
  g.inverse_.assign(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t)
      if (g.mul(s, t) == e && g.mul(t, s) == e) { g.inverse_[static_cast<size_t>(s)] = t; break; }
    if (g.inverse_[static_cast<size_t>(s)] < 0)
      throw ValidationError("inverse", 1.0, "element " + std::to_string(s) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw ValidationError("associativity", 1.0,
                                "witness triple (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
  // rows and columns are permutations (implied, but kept as a cheap invariant)
  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen_row(static_cast<size_t>(n)), seen_col(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
      seen_row[static_cast<size_t>(g.mul(s, t))] = true;
      seen_col[static_cast<size_t>(g.mul(t, s))] = true;
    }
    for (int t = 0; t < n; ++t)
      if (!seen_row[static_cast<size_t>(t)] || !seen_col[static_cast<size_t>(t)])
        throw ValidationError("latin_square", 1.0, "row/col " + std::to_string(s));
  }
  g.name_ = "custom" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::builtin(const std::string& name) {
  auto cyclic = [](int n, const std::string& label) {
    if (n < 1) throw Error("cyclic(n) needs n >= 1");
    FiniteGroup g = from_cayley_table(cyclic_table(n));
    g.name_ = label;
    return g;
  };
  if (name == "trivial") return cyclic(1, "trivial");
  if (name.size() >= 2 && (name[0] == 'c' || name[0] == 'C')) {
    bool digits = true;
    for (size_t i = 1; i < name.size(); ++i) digits = digits && (std::isdigit(static_cast<unsigned char>(name[i])) != 0);
    if (digits) return cyclic(std::stoi(name.substr(1)), "c" + name.substr(1));
  }
  if (name.rfind("cyclic(", 0) == 0 && name.back() == ')')
    return cyclic(std::stoi(name.substr(7, name.size() - 8)), name);
  if (name == "s3") {
    FiniteGroup g = from_cayley_table(dihedral_table(3));
    g.name_ = "s3";
    return g;
  }
  if (name == "d4") {
    FiniteGroup g = from_cayley_table(dihedral_table(4));
    g.name_ = "d4";
    return g;
  }
  if (name == "q8") {
    FiniteGroup g = from_cayley_table(quaternion_table());
    g.name_ = "q8";
    return g;
  }
  throw Error("unknown builtin group '" + name + "'");
}

bool FiniteGroup::abelian() const {
  for (int s = 0; s < order_; ++s)
    for (int t = 0; t < order_; ++t)
      if (mul(s, t) != mul(t, s)) return false;
  return true;
}

int FiniteGroup::element_order(int s) const {
  int k = 1, cur = s;
  while (cur != identity_) {
    cur = mul(cur, s);
    ++k;
  }
  return k;
}

void validate_irreps(const FiniteGroup& g, const std::vector<GroupIrrep>& reps) {
  int n = g.order();
  long dimsum = 0;
  for (const auto& rep : reps) {
    if (static_cast<int>(rep.matrices.size()) != n)
      throw ValidationError("irrep_size", 1.0, "one matrix per group element required");
    for (int s = 0; s < n; ++s) {
      const CMatrix& m = rep.matrices[static_cast<size_t>(s)];
      if (m.rows() != rep.dim || m.cols() != rep.dim)
        throw ValidationError("irrep_shape", 1.0);
      double u = (m.adjoint() * m - identity(rep.dim)).norm();
      if (u > 1e-10) throw ValidationError("unitarity", u, "element " + std::to_string(s));
      for (int t = 0; t < n; ++t) {
        double h = (rep.matrices[static_cast<size_t>(s)] * rep.matrices[static_cast<size_t>(t)] -
                    rep.matrices[static_cast<size_t>(g.mul(s, t))])
                       .norm();
        if (h > 1e-10)
          throw ValidationError("homomorphism", h,
                                "pair (" + std::to_string(s) + "," + std::to_string(t) + ")");
      }
    }
    // irreducibility via the character norm
    double cn = 0;
    for (int s = 0; s < n; ++s) cn += std::norm(rep.character(s));
    cn /= n;
    if (std::abs(cn - 1.0) > 1e-8)
      throw ValidationError("irreducibility", std::abs(cn - 1.0));
    dimsum += static_cast<long>(rep.dim) * rep.dim;
  }
  for (size_t a = 0; a < reps.size(); ++a)
    for (size_t b = 0; b < a; ++b) {
      Cplx ip = 0;
      for (int s = 0; s < n; ++s)
        ip += reps[a].character(s) * std::conj(reps[b].character(s));
      if (std::abs(ip) / n > 1e-10)
        throw ValidationError("character_orthogonality", std::abs(ip) / n);
    }
  if (dimsum != n)
    throw ValidationError("completeness", static_cast<double>(dimsum - n),
                          "sum of squared dims " + std::to_string(dimsum) +
                              " != order " + std::to_string(n));
}

std::vector<GroupIrrep> irreps(const FiniteGroup& g) {
  std::vector<GroupIrrep> reps;
  if (g.abelian()) {
    reps = abelian_characters(g);
  } else if (g.name() == "s3") {
    reps = dihedral_irreps(g, 3);
  } else if (g.name() == "d4") {
    reps = dihedral_irreps(g, 4);
  } else if (g.name() == "q8") {
    reps = quaternion_irreps(g);
  } else {
    throw Error("irreps unavailable; supply via file");
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [](const GroupIrrep& a, const GroupIrrep& b) { return a.dim < b.dim; });
  validate_irreps(g, reps);
  return reps;
}

FiniteGroup group_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int order = j.at("order").get<int>();
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(table.size()) != order)
    throw Error("group json: order does not match table size");
  return FiniteGroup::from_cayley_table(table);
}

std::string group_to_json(const FiniteGroup& g) {
  nlohmann::ordered_json j;
  j["order"] = g.order();
  j["table"] = g.table();
  return j.dump();
}

std::vector<GroupIrrep> irreps_from_json(const FiniteGroup& g, const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<GroupIrrep> reps;
  for (const auto& entry : j) {
    GroupIrrep rep;
    rep.dim = entry.at("dim").get<int>();
    for (const auto& m : entry.at("matrices"))
      rep.matrices.push_back(matrix_from_json(m.dump()));
    reps.push_back(std::move(rep));
  }
  validate_irreps(g, reps);
  return reps;
}

}  // namespace nqfa

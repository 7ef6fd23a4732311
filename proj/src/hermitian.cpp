#include "picard/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace picard {

namespace {

FieldElement fe(const Field& f, i64 a, i64 b) { return FieldElement(f, a, b); }

void require_field(const Field& f, const FieldElement& x, const char* op) {
  if (x.field() != f) {
    throw std::invalid_argument(std::string(op) + ": element from wrong field");
  }
}

}  // namespace

Vec3k::Vec3k(FieldElement x1, FieldElement x2, FieldElement x3)
    : field_(x1.field()) {
  if (x2.field() != field_ || x3.field() != field_) {
    throw std::invalid_argument("Vec3k: mixed fields");
  }
  e_.reserve(3);
  e_.push_back(std::move(x1));
  e_.push_back(std::move(x2));
  e_.push_back(std::move(x3));
}

bool Vec3k::is_zero() const {
  return e_[0].is_zero() && e_[1].is_zero() && e_[2].is_zero();
}

bool Vec3k::is_integral() const {
  return e_[0].is_integral() && e_[1].is_integral() && e_[2].is_integral();
}

std::string Vec3k::str() const {
  return "(" + e_[0].str() + ", " + e_[1].str() + ", " + e_[2].str() + ")";
}

mpq_class h0_self(const Vec3k& x) {
  return elem_trace(elem_mul(x[0], elem_conj(x[2]))) - elem_norm(x[1]);
}

bool is_isotropic(const Field& field, const Vec3k& x) {
  if (x.field() != field) {
    throw std::invalid_argument("is_isotropic: vector from wrong field");
  }
  if (x.is_zero()) {
    throw std::invalid_argument("is_isotropic: zero vector");
  }
  return h0_self(x) == 0;
}

namespace {

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Rationally primitive integral vector spanning the same line, derived
// from the affine representative so the result is scaling-invariant.
Vec3k integral_primitive(const Vec3k& v) {
  const Field& f = v.field();
  int i0 = -1;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) {
      i0 = i;
      break;
    }
  }
  if (i0 < 0) throw std::invalid_argument("integral_primitive: zero vector");
  std::vector<FieldElement> affine;
  for (int i = 0; i < 3; ++i) affine.push_back(elem_div(v[i], v[i0]));
  mpz_class den = 1;
  for (const auto& x : affine) {
    den = lcm_z(den, x.a().get_den());
    den = lcm_z(den, x.b().get_den());
  }
  mpz_class g = 0;
  for (const auto& x : affine) {
    mpz_class na = x.a().get_num() * (den / x.a().get_den());
    mpz_class nb = x.b().get_num() * (den / x.b().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), na.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nb.get_mpz_t());
  }
  mpq_class rho(den, g);
  rho.canonicalize();
  std::vector<FieldElement> out;
  for (const auto& x : affine) {
    out.emplace_back(f, x.a() * rho, x.b() * rho);
  }
  return Vec3k(out[0], out[1], out[2]);
}

FractionalIdeal content_ideal(const Vec3k& v) {
  std::vector<FieldElement> gens;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) gens.push_back(v[i]);
  }
  return FractionalIdeal::from_generators(v.field(), gens);
}

int vec_compare(const Vec3k& a, const Vec3k& b) {
  for (int i = 0; i < 3; ++i) {
    int c = FieldElement::compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

Vec3k canonical_rep(const Field& field, const Vec3k& v) {
  Vec3k w = integral_primitive(v);
  FractionalIdeal c = content_ideal(w);
  if (auto gen = principal_generator(c)) {
    std::vector<FieldElement> q;
    for (int i = 0; i < 3; ++i) q.push_back(elem_div(w[i], *gen));
    w = Vec3k(q[0], q[1], q[2]);
    if (!w.is_integral()) {
      throw internal_error("canonical_rep: content division left denominators");
    }
  }
  std::optional<Vec3k> best;
  for (const FieldElement& u : unit_group(field)) {
    Vec3k cand(elem_mul(u, w[0]), elem_mul(u, w[1]), elem_mul(u, w[2]));
    if (!best || vec_compare(cand, *best) < 0) best = cand;
  }
  return *best;
}

// Key identifying the line independently of any scaling.
std::string affine_key(const Vec3k& v) {
  int i0 = -1;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) {
      i0 = i;
      break;
    }
  }
  std::ostringstream os;
  os << i0;
  for (int i = i0 + 1; i < 3; ++i) {
    FieldElement q = elem_div(v[i], v[i0]);
    os << "|" << q.a().get_str() << "," << q.b().get_str();
  }
  return os.str();
}

// Class of the line spanned by an integral vector: inverse of the content
// ideal class. Cheaper than full canonicalization; used in search loops.
FormClass line_class_of_integral(const Vec3k& v) {
  return inverse(ideal_to_form_class(content_ideal(v)));
}

}  // namespace

IsotropicLine IsotropicLine::from_vector(const Field& field, const Vec3k& x) {
  if (!is_isotropic(field, x)) {
    throw std::invalid_argument("IsotropicLine: vector is not isotropic");
  }
  return IsotropicLine(field, canonical_rep(field, x));
}

FractionalIdeal line_denominator_ideal(const IsotropicLine& line) {
  const Vec3k& x = line.representative();
  std::optional<FractionalIdeal> acc;
  for (int i = 0; i < 3; ++i) {
    if (x[i].is_zero()) continue;
    FractionalIdeal inv = ideal_inverse(FractionalIdeal::principal(x[i]));
    acc = acc ? ideal_intersect(*acc, inv) : inv;
  }
  if (!acc) throw internal_error("line_denominator_ideal: zero representative");
  return *acc;
}

FormClass ideal_class_of_line(const IsotropicLine& line) {
  return ideal_to_form_class(line_denominator_ideal(line));
}

std::vector<FieldElement> elements_of_norm_up_to(const Field& field,
                                                 i64 bound) {
  std::vector<std::pair<i64, FieldElement>> out;
  const i64 d = field.d();
  i64 bmax;
  if (field.omega_half()) {
    // N(a + bw) = (a + b/2)^2 + (d/4) b^2
    bmax = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(bound) /
                                      static_cast<double>(d))) +
           2;
  } else {
    bmax = static_cast<i64>(std::sqrt(static_cast<double>(bound) /
                                      static_cast<double>(d))) +
           2;
  }
  i64 aspan =
      static_cast<i64>(std::sqrt(static_cast<double>(bound))) + bmax + 2;
  for (i64 b = -bmax; b <= bmax; ++b) {
    for (i64 a = -aspan; a <= aspan; ++a) {
      FieldElement x = fe(field, a, b);
      mpq_class n = elem_norm(x);
      if (n <= bound) out.emplace_back(n.get_num().get_si(), x);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (p.first != q.first) return p.first < q.first;
    return FieldElement::compare(p.second, q.second) < 0;
  });
  std::vector<FieldElement> just;
  just.reserve(out.size());
  for (auto& p : out) just.push_back(std::move(p.second));
  return just;
}

namespace {

struct Candidate {
  i64 height;
  unsigned i1, i2, i3;
  bool operator<(const Candidate& o) const {
    if (height != o.height) return height < o.height;
    if (i1 != o.i1) return i1 < o.i1;
    if (i2 != o.i2) return i2 < o.i2;
    return i3 < o.i3;
  }
};

// Shared enumeration behind find_line_with_class and zink_search: visits
// primitive integral isotropic vectors of height <= bound in canonical
// order, one representative per line, until visit returns false.
template <class Visit>
void enumerate_isotropic(const Field& field, i64 bound, Visit visit) {
  std::vector<FieldElement> S = elements_of_norm_up_to(field, bound);
  std::vector<i64> norms;
  norms.reserve(S.size());
  std::map<i64, std::vector<unsigned>> bynorm;
  for (unsigned i = 0; i < S.size(); ++i) {
    i64 n = elem_norm(S[i]).get_num().get_si();
    norms.push_back(n);
    bynorm[n].push_back(i);
  }
  std::vector<Candidate> cands;
  for (unsigned i1 = 0; i1 < S.size(); ++i1) {
    for (unsigned i3 = 0; i3 < S.size(); ++i3) {
      mpq_class t = elem_trace(elem_mul(S[i1], elem_conj(S[i3])));
      if (t < 0 || t > bound) continue;
      auto it = bynorm.find(t.get_num().get_si());
      if (it == bynorm.end()) continue;
      for (unsigned i2 : it->second) {
        if (norms[i1] == 0 && norms[i2] == 0 && norms[i3] == 0) continue;
        i64 h = std::max({norms[i1], norms[i2], norms[i3]});
        cands.push_back({h, i1, i2, i3});
      }
    }
  }
  std::sort(cands.begin(), cands.end());
  std::unordered_set<std::string> seen;
  for (const Candidate& c : cands) {
    Vec3k v(S[c.i1], S[c.i2], S[c.i3]);
    // skip rationally imprimitive vectors; the primitive multiple has
    // smaller height and is visited earlier
    mpz_class g = 0;
    for (int i = 0; i < 3; ++i) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].a().get_num().get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].b().get_num().get_mpz_t());
    }
    if (g != 1) continue;
    std::string key = affine_key(v);
    if (!seen.insert(key).second) continue;
    if (!visit(v, c.height, line_class_of_integral(v))) return;
  }
}

}  // namespace

std::optional<LineSearchResult> find_line_with_class(const Field& field,
                                                     const FormClass& c,
                                                     i64 height_bound) {
  if (height_bound < 1) {
    throw std::invalid_argument("find_line_with_class: bound must be >= 1");
  }
  if (c.disc() != field.disc()) {
    throw std::invalid_argument("find_line_with_class: class/field mismatch");
  }
  std::optional<LineSearchResult> result;
  enumerate_isotropic(field, height_bound,
                      [&](const Vec3k& v, i64 h, const FormClass& cls) {
                        if (cls == c) {
                          result = LineSearchResult{
                              IsotropicLine::from_vector(field, v), v, h};
                          return false;
                        }
                        return true;
                      });
  return result;
}

std::vector<std::optional<LineSearchResult>> zink_search(const Field& field,
                                                         i64 height_bound) {
  ClassGroup g = enumerate_reduced(field.disc());
  std::map<FormClass, size_t> index;
  for (size_t i = 0; i < g.reduced_forms.size(); ++i) {
    index[g.reduced_forms[i]] = i;
  }
  std::vector<std::optional<LineSearchResult>> found(g.reduced_forms.size());
  size_t remaining = found.size();
  enumerate_isotropic(field, height_bound,
                      [&](const Vec3k& v, i64 h, const FormClass& cls) {
                        size_t i = index.at(cls);
                        if (!found[i]) {
                          found[i] = LineSearchResult{
                              IsotropicLine::from_vector(field, v), v, h};
                          --remaining;
                        }
                        return remaining > 0;
                      });
  return found;
}

UnitaryMatrix::UnitaryMatrix(const Field& field,
                             std::vector<FieldElement> entries)
    : field_(field), e_(std::move(entries)) {
  if (e_.size() != 9) {
    throw std::invalid_argument("UnitaryMatrix: nine entries required");
  }
  for (const auto& x : e_) require_field(field_, x, "UnitaryMatrix");
  integral_ = true;
  for (const auto& x : e_) {
    if (!x.is_integral()) integral_ = false;
  }
  det_one_ = (det() == fe(field_, 1, 0));
  // conj(M)^T h0 M = h0, checked entrywise; h0 = antidiag(1, -1, 1).
  preserves_h0_ = true;
  auto h0 = [](int i, int j) -> i64 {
    if (i + j != 2) return 0;
    return i == 1 ? -1 : 1;
  };
  for (int i = 0; i < 3 && preserves_h0_; ++i) {
    for (int j = 0; j < 3 && preserves_h0_; ++j) {
      FieldElement s = fe(field_, 0, 0);
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          if (h0(k, l) == 0) continue;
          FieldElement term = elem_mul(elem_conj(at(k, i)), at(l, j));
          s = h0(k, l) > 0 ? elem_add(s, term) : elem_sub(s, term);
        }
      }
      if (s != fe(field_, h0(i, j), 0)) preserves_h0_ = false;
    }
  }
}

FieldElement UnitaryMatrix::det() const {
  FieldElement s = fe(field_, 0, 0);
  static const int perm[6][4] = {{0, 1, 2, 1},  {1, 2, 0, 1},  {2, 0, 1, 1},
                                 {2, 1, 0, -1}, {1, 0, 2, -1}, {0, 2, 1, -1}};
  for (const auto& p : perm) {
    FieldElement t = elem_mul(elem_mul(at(0, p[0]), at(1, p[1])), at(2, p[2]));
    s = p[3] > 0 ? elem_add(s, t) : elem_sub(s, t);
  }
  return s;
}

UnitaryMatrix UnitaryMatrix::identity(const Field& field) {
  std::vector<FieldElement> e;
  for (int i = 0; i < 9; ++i) e.push_back(fe(field, i % 4 == 0 ? 1 : 0, 0));
  return UnitaryMatrix(field, e);
}

UnitaryMatrix UnitaryMatrix::weyl(const Field& field) {
  std::vector<FieldElement> e;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      i64 v = (i + j == 2) ? (i == 1 ? -1 : 1) : 0;
      e.push_back(fe(field, v, 0));
    }
  }
  UnitaryMatrix m(field, e);
  if (!m.in_gamma_std()) throw internal_error("weyl: flags failed");
  return m;
}

UnitaryMatrix UnitaryMatrix::diagonal_unit(const Field& field,
                                           const FieldElement& u) {
  require_field(field, u, "diagonal_unit");
  if (elem_norm(u) != 1 || !u.is_integral()) {
    throw std::invalid_argument("diagonal_unit: u must be a unit of O_k");
  }
  FieldElement zero = fe(field, 0, 0);
  FieldElement beta = elem_div(elem_conj(u), u);
  FieldElement gamma = elem_inverse(elem_conj(u));
  std::vector<FieldElement> e{u,    zero, zero, zero, beta,
                              zero, zero, zero, gamma};
  UnitaryMatrix m(field, e);
  if (!m.in_gamma_std()) throw internal_error("diagonal_unit: flags failed");
  return m;
}

UnitaryMatrix UnitaryMatrix::heisenberg(const Field& field,
                                        const FieldElement& t,
                                        const FieldElement& s) {
  require_field(field, t, "heisenberg");
  require_field(field, s, "heisenberg");
  if (elem_trace(s) != elem_norm(t)) {
    throw std::invalid_argument("heisenberg: tr(s) = N(t) required");
  }
  FieldElement zero = fe(field, 0, 0), one = fe(field, 1, 0);
  std::vector<FieldElement> e{one,  elem_conj(t), s,    zero, one,
                              t,    zero,         zero, one};
  UnitaryMatrix m(field, e);
  if (!m.preserves_h0() || !m.det_one()) {
    throw internal_error("heisenberg: flags failed");
  }
  return m;
}

Vec3k UnitaryMatrix::apply(const Vec3k& v) const {
  if (v.field() != field_) {
    throw std::invalid_argument("UnitaryMatrix::apply: wrong field");
  }
  std::vector<FieldElement> out;
  for (int i = 0; i < 3; ++i) {
    FieldElement s = fe(field_, 0, 0);
    for (int k = 0; k < 3; ++k) s = elem_add(s, elem_mul(at(i, k), v[k]));
    out.push_back(s);
  }
  return Vec3k(out[0], out[1], out[2]);
}

UnitaryMatrix UnitaryMatrix::mul(const UnitaryMatrix& o) const {
  if (o.field_ != field_) {
    throw std::invalid_argument("UnitaryMatrix::mul: mixed fields");
  }
  std::vector<FieldElement> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      FieldElement s = fe(field_, 0, 0);
      for (int k = 0; k < 3; ++k) {
        s = elem_add(s, elem_mul(at(i, k), o.at(k, j)));
      }
      out.push_back(s);
    }
  }
  return UnitaryMatrix(field_, out);
}

UnitaryMatrix UnitaryMatrix::inverse() const {
  FieldElement d = det();
  if (d.is_zero()) {
    throw std::invalid_argument("UnitaryMatrix::inverse: singular matrix");
  }
  std::vector<FieldElement> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // adjugate: cofactor of (j, i)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      FieldElement cof = elem_sub(elem_mul(at(r0, c0), at(r1, c1)),
                                  elem_mul(at(r0, c1), at(r1, c0)));
      out.push_back(elem_div(cof, d));
    }
  }
  return UnitaryMatrix(field_, out);
}

std::string UnitaryMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << "[";
    for (int j = 0; j < 3; ++j) {
      os << at(i, j).str() << (j < 2 ? ", " : "");
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

std::vector<FieldElement> heisenberg_partners(const Field& field,
                                              const FieldElement& t,
                                              i64 bound) {
  std::vector<FieldElement> out;
  mpq_class nt = elem_norm(t);
  i64 n = nt.get_num().get_si();
  if (field.omega_half()) {
    // tr(p + q w) = 2p + q, so q = N(t) - 2p
    i64 span = bound + std::abs(n) + 2;
    for (i64 p = -span; p <= span; ++p) {
      FieldElement s = fe(field, p, n - 2 * p);
      if (elem_norm(s) <= bound) out.push_back(s);
    }
  } else {
    // tr(p + q w) = 2p, which forces N(t) even
    if (n % 2 != 0) return out;
    i64 p = n / 2;
    i64 qmax = static_cast<i64>(std::sqrt(static_cast<double>(bound) /
                                          static_cast<double>(field.d()))) +
               2;
    for (i64 q = -qmax; q <= qmax; ++q) {
      FieldElement s = fe(field, p, q);
      if (elem_norm(s) <= bound) out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<UnitaryMatrix> gamma_std_sample(const Field& field,
                                            i64 norm_bound) {
  std::vector<UnitaryMatrix> out;
  std::set<std::string> seen;
  auto push = [&](const UnitaryMatrix& m) {
    if (!m.in_gamma_std()) {
      throw internal_error("gamma_std_sample: element fails membership flags");
    }
    if (seen.insert(m.str()).second) out.push_back(m);
  };
  push(UnitaryMatrix::identity(field));
  UnitaryMatrix w = UnitaryMatrix::weyl(field);
  push(w);
  for (const FieldElement& u : unit_group(field)) {
    push(UnitaryMatrix::diagonal_unit(field, u));
  }
  for (const FieldElement& t : elements_of_norm_up_to(field, norm_bound)) {
    for (const FieldElement& s : heisenberg_partners(field, t, norm_bound)) {
      UnitaryMatrix n = UnitaryMatrix::heisenberg(field, t, s);
      push(n);
      push(w.mul(n).mul(w));
    }
  }
  return out;
}

std::vector<UnitaryMatrix> gamma_std_sample_at_least(const Field& field,
                                                     int min_count) {
  for (i64 bound = 4; bound <= (1 << 20); bound *= 2) {
    auto sample = gamma_std_sample(field, bound);
    if (static_cast<int>(sample.size()) >= min_count) return sample;
  }
  throw internal_error("gamma_std_sample_at_least: bound escalation exhausted");
}

bool class_invariance_check(const Field& field, const IsotropicLine& line,
                            const std::vector<UnitaryMatrix>& sample,
                            int word_length) {
  if (line.field() != field) {
    throw std::invalid_argument("class_invariance_check: wrong field");
  }
  FormClass expected = ideal_class_of_line(line);
  std::vector<Vec3k> frontier{line.representative()};
  std::unordered_set<std::string> seen{affine_key(line.representative())};
  for (int depth = 0; depth < word_length; ++depth) {
    std::vector<Vec3k> next;
    for (const Vec3k& v : frontier) {
      for (const UnitaryMatrix& m : sample) {
        Vec3k w = m.apply(v);
        if (!seen.insert(affine_key(w)).second) continue;
        if (line_class_of_integral(integral_primitive(w)) != expected) {
          return false;
        }
        next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return true;
}

std::optional<std::vector<int>> equivalence_search(
    const Field& field, const IsotropicLine& line1, const IsotropicLine& line2,
    const std::vector<UnitaryMatrix>& sample, int word_length) {
  if (line1.field() != field || line2.field() != field) {
    throw std::invalid_argument("equivalence_search: wrong field");
  }
  if (line1 == line2) return std::vector<int>{};
  std::vector<UnitaryMatrix> inverses;
  inverses.reserve(sample.size());
  for (const auto& m : sample) inverses.push_back(m.inverse());

  struct Node {
    Vec3k v;
    std::vector<int> word;
  };
  std::unordered_map<std::string, Node> fwd;
  Node start{line1.representative(), {}};
  fwd.emplace(affine_key(start.v), start);
  std::vector<Node> frontier{start};
  int fwd_depth = (word_length + 1) / 2;
  for (int depth = 0; depth < fwd_depth; ++depth) {
    std::vector<Node> next;
    for (const Node& n : frontier) {
      for (size_t i = 0; i < sample.size(); ++i) {
        Vec3k w = sample[i].apply(n.v);
        std::string key = affine_key(w);
        if (fwd.count(key)) continue;
        Node nn{w, n.word};
        nn.word.push_back(static_cast<int>(i));
        fwd.emplace(key, nn);
        next.push_back(std::move(nn));
      }
    }
    frontier = std::move(next);
  }

  auto finish = [&](const std::vector<int>& fwd_word,
                    const std::vector<int>& bwd_word) {
    std::vector<int> word = fwd_word;
    for (auto it = bwd_word.rbegin(); it != bwd_word.rend(); ++it) {
      word.push_back(*it);
    }
    Vec3k v = line1.representative();
    for (int i : word) v = sample[static_cast<size_t>(i)].apply(v);
    if (IsotropicLine::from_vector(field, v) != line2) {
      throw internal_error("equivalence_search: witness verification failed");
    }
    return word;
  };

  Node bstart{line2.representative(), {}};
  if (auto it = fwd.find(affine_key(bstart.v)); it != fwd.end()) {
    return finish(it->second.word, {});
  }
  std::unordered_set<std::string> bseen{affine_key(bstart.v)};
  std::vector<Node> bfront{bstart};
  int bwd_depth = word_length - fwd_depth;
  for (int depth = 0; depth < bwd_depth; ++depth) {
    std::vector<Node> next;
    for (const Node& n : bfront) {
      for (size_t i = 0; i < sample.size(); ++i) {
        Vec3k w = inverses[i].apply(n.v);
        std::string key = affine_key(w);
        if (!bseen.insert(key).second) continue;
        Node nn{w, n.word};
        nn.word.push_back(static_cast<int>(i));
        if (auto it = fwd.find(key); it != fwd.end()) {
          return finish(it->second.word, nn.word);
        }
        next.push_back(std::move(nn));
      }
    }
    bfront = std::move(next);
  }
  return std::nullopt;
}

}  // namespace picard

#include "c0dynamo/torus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace c0dynamo {

namespace {

bool valid_symbol(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char ch : name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

BigInt rat_floor(const Rat& q) {
  BigInt t = numerator(q) / denominator(q);
  if (q < 0 && t * denominator(q) != numerator(q)) --t;
  return t;
}

Rat fractional(const Rat& q) { return q - Rat(rat_floor(q)); }

bool is_integer(const Rat& q) { return denominator(q) == 1; }

}  // namespace

FormalReal FormalReal::symbol(const std::string& name, const Rat& coeff) {
  if (!valid_symbol(name))
    throw std::invalid_argument("formal real: bad symbol name '" + name + "'");
  FormalReal out;
  if (coeff != 0) out.terms_[name] = coeff;
  return out;
}

FormalReal FormalReal::parse(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("formal real: empty input");

  FormalReal out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    i = j;
    if (term.empty()) throw std::invalid_argument("formal real: empty term in '" + text + "'");
    const std::size_t star = term.find('*');
    if (star == std::string::npos) {
      if (valid_symbol(term)) {
        out += symbol(term, Rat(sign));
      } else {
        out.rational_ += sign * parse_rational(term);
      }
    } else {
      const Rat coeff = parse_rational(term.substr(0, star));
      const std::string name = term.substr(star + 1);
      if (!valid_symbol(name))
        throw std::invalid_argument("formal real: bad symbol name '" + name + "'");
      out += symbol(name, sign * coeff);
    }
  }
  out.prune();
  return out;
}

std::string FormalReal::str() const {
  std::string out;
  if (rational_ != 0 || terms_.empty()) out = format_rational(rational_);
  for (const auto& [name, c] : terms_) {
    const bool neg = c < 0;
    const Rat mag = neg ? Rat(-c) : c;
    const std::string body = mag == 1 ? name : format_rational(mag) + "*" + name;
    if (out.empty())
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

Rat FormalReal::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rat(0) : it->second;
}

FormalReal& FormalReal::operator+=(const FormalReal& other) {
  rational_ += other.rational_;
  for (const auto& [name, c] : other.terms_) terms_[name] += c;
  prune();
  return *this;
}

FormalReal& FormalReal::operator-=(const FormalReal& other) {
  rational_ -= other.rational_;
  for (const auto& [name, c] : other.terms_) terms_[name] -= c;
  prune();
  return *this;
}

FormalReal FormalReal::operator*(const Rat& c) const {
  FormalReal out;
  if (c == 0) return out;
  out.rational_ = rational_ * c;
  for (const auto& [name, coeff] : terms_) out.terms_[name] = coeff * c;
  return out;
}

FormalReal FormalReal::mod1() const {
  FormalReal out = *this;
  out.rational_ = fractional(out.rational_);
  return out;
}

double FormalReal::approx(const std::map<std::string, double>& symbol_values) const {
  double v = to_double(rational_);
  for (const auto& [name, c] : terms_) {
    auto it = symbol_values.find(name);
    if (it == symbol_values.end())
      throw std::domain_error("formal real: no numeric value for symbol '" + name + "'");
    v += to_double(c) * it->second;
  }
  return v;
}

const std::map<std::string, double>& FormalReal::default_symbol_values() {
  static const std::map<std::string, double> table = {
      {"sqrt2", std::sqrt(2.0)}, {"sqrt3", std::sqrt(3.0)}, {"sqrt5", std::sqrt(5.0)},
      {"pi", std::acos(-1.0)},   {"e", std::exp(1.0)},      {"phi", (1.0 + std::sqrt(5.0)) / 2.0},
  };
  return table;
}

void FormalReal::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

bool is_minimal(const TorusRotation& rho) {
  std::set<std::string> syms;
  for (const auto& [name, c] : rho.x.terms()) syms.insert(name);
  for (const auto& [name, c] : rho.y.terms()) syms.insert(name);
  std::vector<Rat> rx, ry;
  for (const std::string& s : syms) {
    rx.push_back(rho.x.coefficient(s));
    ry.push_back(rho.y.coefficient(s));
  }
  for (std::size_t i = 0; i < rx.size(); ++i)
    for (std::size_t j = i + 1; j < rx.size(); ++j)
      if (rx[i] * ry[j] - rx[j] * ry[i] != 0) return true;
  return false;
}

TorusRotation apply_unimodular(const Mat2Z& A, const TorusRotation& rho) {
  BigInt det = A.det();
  if (det != 1 && det != -1)
    throw std::invalid_argument("apply_unimodular: matrix is not in GL(2,Z)");
  TorusRotation out;
  out.x = rho.x * Rat(A.a) + rho.y * Rat(A.b);
  out.y = rho.x * Rat(A.c) + rho.y * Rat(A.d);
  return out.mod1();
}

TorusRotation apply_unimodular(const UnimodularWitness& w, const TorusRotation& rho) {
  BigInt det = w.matrix.det();
  if (det != 1 && det != -1)
    throw std::invalid_argument("apply_unimodular: matrix is not in GL(2,Z)");
  TorusRotation out;
  out.x = rho.x * Rat(w.matrix.a) + rho.y * Rat(w.matrix.b) + FormalReal(Rat(w.shift[0]));
  out.y = rho.x * Rat(w.matrix.c) + rho.y * Rat(w.matrix.d) + FormalReal(Rat(w.shift[1]));
  return out.mod1();
}

std::string refutation_stage_name(RefutationStage stage) {
  switch (stage) {
    case RefutationStage::None: return "none";
    case RefutationStage::NoRationalSolution: return "no_rational_solution";
    case RefutationStage::NonIntegralMatrix: return "non_integral_matrix";
    case RefutationStage::DeterminantNotUnimodular: return "determinant_not_unimodular";
    case RefutationStage::RationalPartMismatch: return "rational_part_mismatch";
  }
  return "none";
}

ConjugacyDecision decide_conjugacy(const TorusRotation& rho, const TorusRotation& sigma) {
  if (!is_minimal(rho) || !is_minimal(sigma))
    throw std::invalid_argument("decide_conjugacy: both rotations must be minimal");

  std::set<std::string> sym_set;
  for (const FormalReal* f : {&rho.x, &rho.y, &sigma.x, &sigma.y})
    for (const auto& [name, c] : f->terms()) sym_set.insert(name);
  const std::vector<std::string> syms(sym_set.begin(), sym_set.end());
  const std::size_t S = syms.size();
  std::vector<Rat> rx(S), ry(S), sx(S), sy(S);
  for (std::size_t k = 0; k < S; ++k) {
    rx[k] = rho.x.coefficient(syms[k]);
    ry[k] = rho.y.coefficient(syms[k]);
    sx[k] = sigma.x.coefficient(syms[k]);
    sy[k] = sigma.y.coefficient(syms[k]);
  }

  // Minimality of rho makes its coefficient matrix rank 2: pick two
  // independent columns, then the candidate matrix is unique over Q.
  std::size_t c1 = 0, c2 = 0;
  Rat det2;
  bool found = false;
  for (std::size_t i = 0; i < S && !found; ++i)
    for (std::size_t j = i + 1; j < S && !found; ++j) {
      det2 = rx[i] * ry[j] - rx[j] * ry[i];
      if (det2 != 0) {
        c1 = i;
        c2 = j;
        found = true;
      }
    }

  ConjugacyDecision out;
  auto solve_row = [&](const std::vector<Rat>& target, Rat& first, Rat& second) {
    first = (target[c1] * ry[c2] - target[c2] * ry[c1]) / det2;
    second = (rx[c1] * target[c2] - rx[c2] * target[c1]) / det2;
  };
  Mat2Q F;
  solve_row(sx, F.a, F.b);
  solve_row(sy, F.c, F.d);
  for (std::size_t k = 0; k < S; ++k) {
    if (F.a * rx[k] + F.b * ry[k] != sx[k] || F.c * rx[k] + F.d * ry[k] != sy[k]) {
      out.stage = RefutationStage::NoRationalSolution;
      return out;
    }
  }
  out.forced = F;
  if (!is_integer(F.a) || !is_integer(F.b) || !is_integer(F.c) || !is_integer(F.d)) {
    out.stage = RefutationStage::NonIntegralMatrix;
    return out;
  }
  Mat2Z A{numerator(F.a), numerator(F.b), numerator(F.c), numerator(F.d)};
  BigInt det = A.det();
  if (det != 1 && det != -1) {
    out.stage = RefutationStage::DeterminantNotUnimodular;
    return out;
  }
  const Rat ex = F.a * rho.x.rational() + F.b * rho.y.rational() - sigma.x.rational();
  const Rat ey = F.c * rho.x.rational() + F.d * rho.y.rational() - sigma.y.rational();
  if (!is_integer(ex) || !is_integer(ey)) {
    out.stage = RefutationStage::RationalPartMismatch;
    return out;
  }
  out.conjugate = true;
  // sigma = A * rho + shift holds without any mod-1 reduction.
  out.witness = UnimodularWitness{A, {-numerator(ex), -numerator(ey)}};
  return out;
}

FixedLocus fixed_locus(const Mat2Z& A) {
  BigInt m00 = A.a - 1, m01 = A.b, m10 = A.c, m11 = A.d - 1;

  FixedLocus out;
  if (m00 == 0 && m01 == 0 && m10 == 0 && m11 == 0) {
    out.kind = FixedLocusKind::FullTorus;
    return out;
  }

  const BigInt det = m00 * m11 - m01 * m10;
  if (det == 0) {
    // Rank 1: both rows are integer multiples of a primitive vector g, and
    // (A - I)v = 0 mod Z^2 collapses to g.v = k/g0.
    BigInt p = m00, q = m01;
    if (p == 0 && q == 0) {
      p = m10;
      q = m11;
    }
    BigInt gk = gcd(abs(p), abs(q));
    BigInt g1 = p / gk, g2 = q / gk;
    if (g1 < 0 || (g1 == 0 && g2 < 0)) {
      g1 = -g1;
      g2 = -g2;
    }
    auto multiplier = [&](const BigInt& r1, const BigInt& r2) {
      return g1 != 0 ? r1 / g1 : r2 / g2;
    };
    const BigInt t0 = multiplier(m00, m01);
    const BigInt t1 = multiplier(m10, m11);
    const BigInt g0 = gcd(abs(t0), abs(t1));
    out.kind = FixedLocusKind::Lines;
    for (BigInt k = 0; k < g0; ++k)
      out.lines.push_back({{g1, g2}, Rat(k, g0)});
    return out;
  }

  // Rank 2: diagonalize A - I by unimodular row/column operations, tracking
  // the column operations in V; then v = V w with w on the obvious grid.
  Mat2Z V;
  auto col_swap = [&] {
    std::swap(m00, m01);
    std::swap(m10, m11);
    std::swap(V.a, V.b);
    std::swap(V.c, V.d);
  };
  while (m10 != 0 || m01 != 0) {
    while (m10 != 0) {
      if (m00 == 0) {
        std::swap(m00, m10);
        std::swap(m01, m11);
        continue;
      }
      const BigInt q = m10 / m00;
      m10 -= q * m00;
      m11 -= q * m01;
      if (m10 != 0) {
        std::swap(m00, m10);
        std::swap(m01, m11);
      }
    }
    while (m01 != 0) {
      if (m00 == 0) {
        col_swap();
        continue;
      }
      const BigInt q = m01 / m00;
      m01 -= q * m00;
      m11 -= q * m10;
      V.b -= q * V.a;
      V.d -= q * V.c;
      if (m01 != 0) col_swap();
    }
  }
  const BigInt d1 = abs(m00), d2 = abs(m11);
  if (d1 * d2 > 1000000)
    throw std::invalid_argument("fixed_locus: too many fixed points to enumerate");
  out.kind = FixedLocusKind::Points;
  for (BigInt i = 0; i < d1; ++i)
    for (BigInt j = 0; j < d2; ++j) {
      const Rat w0(i, d1), w1(j, d2);
      out.points.push_back({fractional(Rat(V.a) * w0 + Rat(V.b) * w1),
                            fractional(Rat(V.c) * w0 + Rat(V.d) * w1)});
    }
  std::sort(out.points.begin(), out.points.end(),
            [](const std::array<Rat, 2>& u, const std::array<Rat, 2>& v) {
              return u[0] != v[0] ? u[0] < v[0] : u[1] < v[1];
            });
  return out;
}

std::vector<Mat2Z> unimodular_matrices(std::int64_t height) {
  if (height < 1 || height > 16)
    throw std::invalid_argument("unimodular_matrices: height must be in [1, 16]");
  std::vector<Mat2Z> out;
  for (std::int64_t a = -height; a <= height; ++a)
    for (std::int64_t b = -height; b <= height; ++b)
      for (std::int64_t c = -height; c <= height; ++c)
        for (std::int64_t d = -height; d <= height; ++d) {
          const std::int64_t det = a * d - b * c;
          if (det == 1 || det == -1) out.push_back({BigInt(a), BigInt(b), BigInt(c), BigInt(d)});
        }
  return out;
}

std::vector<TorusRotation> orbit_sample(const TorusRotation& rho, std::int64_t height) {
  std::map<std::string, TorusRotation> seen;
  for (const Mat2Z& A : unimodular_matrices(height)) {
    TorusRotation image = apply_unimodular(A, rho);
    seen.emplace(image.x.str() + "|" + image.y.str(), image);
  }
  std::vector<TorusRotation> out;
  out.reserve(seen.size());
  for (auto& [key, rot] : seen) out.push_back(std::move(rot));
  return out;
}

}  // namespace c0dynamo

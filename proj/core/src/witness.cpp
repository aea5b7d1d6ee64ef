#include "c0dynamo/witness.hpp"

#include "c0dynamo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <stdexcept>

namespace c0dynamo {

namespace {

Point rat_point_to_double(const RatPoint& p) {
  Point out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = to_double(p[i]);
  return out;
}

double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

ConjugacyWitness::ConjugacyWitness(int dimension, std::vector<WitnessEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (dimension_ < 2) throw std::invalid_argument("witness: dimension must be >= 2");
  std::sort(entries_.begin(), entries_.end(),
            [](const WitnessEntry& a, const WitnessEntry& b) { return a.strip < b.strip; });
  const auto d = static_cast<std::size_t>(dimension_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const WitnessEntry& e = entries_[i];
    if (e.strip < 2 || e.strip % 2 != 0)
      throw std::invalid_argument("witness: entry strip must be even and >= 2");
    if (i > 0 && entries_[i - 1].strip == e.strip)
      throw std::invalid_argument("witness: duplicate strip entry");
    if (e.box.size() != d || e.source_center.size() != d || e.target_center.size() != d)
      throw std::invalid_argument("witness: entry dimension mismatch");
    if (e.radius <= 0 || e.margin <= 0)
      throw std::invalid_argument("witness: radius and margin must be positive");
    // The box must sit strictly inside the strip (first axis) and the cube.
    Strip h = strip(e.strip);
    if (!(e.box[0].first > h.lo && e.box[0].second < h.hi))
      throw std::invalid_argument("witness: box not inside its strip");
    for (std::size_t k = 1; k < d; ++k)
      if (!(e.box[k].first > 0 && e.box[k].second < 1))
        throw std::invalid_argument("witness: box not inside the cube");
    Point lo(d), hi(d);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = to_double(e.box[k].first);
      hi[k] = to_double(e.box[k].second);
    }
    transports_.emplace_back(std::move(lo), std::move(hi),
                             rat_point_to_double(e.source_center),
                             rat_point_to_double(e.target_center), to_double(e.radius),
                             to_double(e.margin));
    max_strip_ = std::max(max_strip_, e.strip);
  }
}

const WitnessEntry* ConjugacyWitness::entry(std::int64_t strip_index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), strip_index,
                             [](const WitnessEntry& e, std::int64_t n) { return e.strip < n; });
  if (it == entries_.end() || it->strip != strip_index) return nullptr;
  return &*it;
}

Point ConjugacyWitness::apply(Point p) const {
  if (static_cast<int>(p.size()) != dimension_)
    throw std::invalid_argument("witness: point dimension mismatch");
  const double x1 = p[0];
  if (!(x1 >= 0.0) || x1 > 1.0) throw std::domain_error("witness: point outside the cube");
  if (x1 == 0.0 || entries_.empty()) return p;
  if (x1 * static_cast<double>(max_strip_ + 1) < 1.0) return p;  // deeper than any entry
  const std::int64_t n = strip_index(x1);
  const WitnessEntry* e = entry(n);
  if (!e) return p;
  const std::size_t idx = static_cast<std::size_t>(e - entries_.data());
  return transport_apply(transports_[idx], std::move(p));
}

Point ConjugacyWitness::inverse(Point p) const {
  if (static_cast<int>(p.size()) != dimension_)
    throw std::invalid_argument("witness: point dimension mismatch");
  const double x1 = p[0];
  if (!(x1 >= 0.0) || x1 > 1.0) throw std::domain_error("witness: point outside the cube");
  if (x1 == 0.0 || entries_.empty()) return p;
  if (x1 * static_cast<double>(max_strip_ + 1) < 1.0) return p;
  const std::int64_t n = strip_index(x1);
  const WitnessEntry* e = entry(n);
  if (!e) return p;
  const std::size_t idx = static_cast<std::size_t>(e - entries_.data());
  return transport_inverse(transports_[idx], std::move(p));
}

double ConjugacyWitness::max_box_diameter_from(std::int64_t strip_min) const {
  double best = 0.0;
  for (const WitnessEntry& e : entries_) {
    if (e.strip < strip_min) continue;
    Rat diam = 0;
    for (const auto& [lo, hi] : e.box) diam = std::max(diam, Rat(hi - lo));
    best = std::max(best, to_double(diam));
  }
  return best;
}

ConjugacyWitness build_witness(const SequenceSpec& a, const SequenceSpec& b,
                               const LayoutParams& params) {
  params.validate();
  C0Decision dec = c0_equivalent(a, b);
  if (dec.verdict != C0Verdict::Equivalent)
    throw RefusalError("witness requires c0-equivalent sequences", dec);

  const auto d = static_cast<std::size_t>(params.dimension);
  std::vector<WitnessEntry> entries;
  for (std::int64_t j = 1; j < dec.tail_agreement_index; ++j) {
    const Rat va = a.value(j), vb = b.value(j);
    if (va == vb) continue;
    const std::int64_t n = 2 * j;
    const Rat r = params.radius(n);
    const Rat half = r * 3 / 2;
    const Rat k = strip_midline(n);
    WitnessEntry e;
    e.strip = n;
    e.radius = r;
    e.margin = r / 2;
    e.box.assign(d, {Rat(1, 2) - half, Rat(1, 2) + half});
    e.box.front() = {k - half, k + half};
    e.box.back() = {std::min(va, vb) - half, std::max(va, vb) + half};
    auto da = layout(params, a, n), db = layout(params, b, n);
    e.source_center = da->center;
    e.target_center = db->center;
    // The sup-norm diameter must stay below 4r + 2|a(j) - b(j)| so the
    // transport displacement vanishes with the value gap.
    Rat diam = 0;
    for (const auto& [lo, hi] : e.box) diam = std::max(diam, Rat(hi - lo));
    if (!(diam < 4 * r + 2 * rat_abs(va - vb)))
      throw std::logic_error("witness: box diameter bound violated");
    entries.push_back(std::move(e));
  }
  return ConjugacyWitness(params.dimension, std::move(entries));
}

double verify_witness(const ConjugacyWitness& witness, const AssembledSystem& system_a,
                      const AssembledSystem& system_b, std::int64_t samples,
                      std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_witness: need at least one sample");
  const LayoutParams& params = system_a.params();
  const int d = params.dimension;
  if (witness.dimension() != d || system_b.params().dimension != d)
    throw std::invalid_argument("verify_witness: dimension mismatch");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto ball_point = [&](const Point& center, double lo, double hi) {
    Point dir(static_cast<std::size_t>(d));
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : dir) {
        x = gauss(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
    } while (norm == 0.0);
    const double rho = lo + (hi - lo) * unit(rng);
    Point p = center;
    for (int i = 0; i < d; ++i)
      p[static_cast<std::size_t>(i)] += rho * dir[static_cast<std::size_t>(i)] / norm;
    return p;
  };

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(samples));
  constexpr std::int64_t kStripLo = 2, kStripHi = 12;
  const std::int64_t strip_count = kStripHi - kStripLo + 1;
  const std::int64_t per_strip = samples / (strip_count + 1);

  for (std::int64_t n = kStripLo; n <= kStripHi; ++n) {
    auto disk = layout_numeric(params, system_a.spec(), n);
    const double strip_lo = 1.0 / static_cast<double>(n + 1);
    const double strip_hi = 1.0 / static_cast<double>(n);
    const WitnessEntry* e = witness.entry(n);
    const int strata = e ? 4 : 3;
    for (std::int64_t i = 0; i < per_strip; ++i) {
      const int stratum = static_cast<int>(i % strata);
      Point p;
      if (stratum == 0 && disk) {
        p = ball_point(disk->center, 0.0, disk->radius / 3.0);
      } else if (stratum == 1 && disk) {
        p = ball_point(disk->center, disk->radius / 3.0, disk->radius * (2.0 / 3.0) * 0.999);
      } else if (stratum == 3 && e) {
        // Near a box face: uniform inside the box, then pushed to within
        // r/10 of a face along one axis.
        p.assign(static_cast<std::size_t>(d), 0.0);
        for (int c = 0; c < d; ++c) {
          double lo = to_double(e->box[static_cast<std::size_t>(c)].first);
          double hi = to_double(e->box[static_cast<std::size_t>(c)].second);
          p[static_cast<std::size_t>(c)] = lo + (hi - lo) * unit(rng);
        }
        const int axis = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
        const bool high = rng() % 2 == 0;
        const double off = to_double(e->radius) / 10.0 * unit(rng);
        const double lo = to_double(e->box[static_cast<std::size_t>(axis)].first);
        const double hi = to_double(e->box[static_cast<std::size_t>(axis)].second);
        p[static_cast<std::size_t>(axis)] = high ? hi - off : lo + off;
      } else {
        for (int tries = 0; tries < 64; ++tries) {
          p.assign(static_cast<std::size_t>(d), 0.0);
          p[0] = strip_lo + (strip_hi - strip_lo) * unit(rng);
          for (int c = 1; c < d; ++c) p[static_cast<std::size_t>(c)] = unit(rng);
          if (!disk || euclid(p, disk->center) > disk->radius) break;
        }
      }
      points.push_back(std::move(p));
    }
  }
  // Near the limit segment.
  while (points.size() < static_cast<std::size_t>(samples)) {
    Point p(static_cast<std::size_t>(d));
    p[0] = 0.01 * unit(rng);
    if (p[0] == 0.0) p[0] = 0.005;
    for (int c = 1; c < d; ++c) p[static_cast<std::size_t>(c)] = unit(rng);
    points.push_back(std::move(p));
  }

  std::atomic<std::uint64_t> max_bits{0};
  auto update_max = [&max_bits](double v) {
    std::uint64_t bits = 0;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&bits, &v, sizeof(v));
    std::uint64_t cur = max_bits.load(std::memory_order_relaxed);
    // Nonnegative doubles compare as their bit patterns.
    while (bits > cur && !max_bits.compare_exchange_weak(cur, bits, std::memory_order_relaxed)) {
    }
  };
  parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t b, std::int64_t e2) {
    double local = 0.0;
    for (std::int64_t i = b; i < e2; ++i) {
      const Point& p = points[static_cast<std::size_t>(i)];
      Point lhs = witness.apply(system_a.eval(p));
      Point rhs = system_b.eval(witness.apply(p));
      local = std::max(local, euclid(lhs, rhs));
    }
    update_max(local);
  });
  std::uint64_t bits = max_bits.load();
  double result = 0.0;
  std::memcpy(&result, &bits, sizeof(result));
  return result;
}

bool witness_centers_exact(const ConjugacyWitness& witness, const SequenceSpec& a,
                           const SequenceSpec& b, const LayoutParams& params,
                           std::int64_t j_max) {
  if (!a.decidable() || !b.decidable()) return false;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const std::int64_t n = 2 * j;
    auto da = layout(params, a, n), db = layout(params, b, n);
    const WitnessEntry* e = witness.entry(n);
    if (e) {
      if (e->source_center != da->center || e->target_center != db->center) return false;
      if (e->radius != da->radius || e->radius != db->radius) return false;
    } else if (da->center != db->center) {
      return false;
    }
  }
  return true;
}

NonConjugacyCertificate build_certificate(const SequenceSpec& a, const SequenceSpec& b,
                                          const LayoutParams& params, std::int64_t depth) {
  params.validate();
  if (!a.decidable() || !b.decidable())
    throw std::invalid_argument("certificate requires decidable sequence kinds");
  if (depth < 1 || depth > 48)
    throw std::invalid_argument("certificate depth must be in [1, 48]");
  C0Decision dec = c0_equivalent(a, b);
  if (dec.verdict == C0Verdict::Equivalent)
    throw RefusalError("sequences are c0-equivalent; no certificate exists", dec);

  NonConjugacyCertificate cert;
  cert.residue.start = dec.refute_index;
  cert.residue.period = std::lcm(a.period(), b.period());
  cert.value_a = a.value(dec.refute_index);
  cert.value_b = b.value(dec.refute_index);
  cert.gap = rat_abs(cert.value_a - cert.value_b);

  // Extend until 2^-K < gap/2, so the dense tail separates from value_b and
  // the interleaved center sequences exhibit the convergent/divergent split.
  std::int64_t K = depth;
  while (K < 48 && !(Rat(2) < cert.gap * Rat(BigInt(1) << K))) ++K;
  if (!(Rat(2) < cert.gap * Rat(BigInt(1) << K)))
    throw std::invalid_argument("certificate: value gap too small to separate at depth 48");

  // Dense index k: pick the level-(k+1) dyadic closest to value_a; its
  // distance is at most 2^-(k+3) and indices grow strictly with the level.
  for (std::int64_t k = 1; k <= K; ++k) {
    const std::int64_t level = k + 1;
    // j minimizes |(2j-1)/2^(level+2) - (value_a - 1/4)|.
    const Rat y = (cert.value_a - Rat(1, 4)) * Rat(BigInt(1) << (level + 2));
    const Rat half_y = y / 2;
    BigInt j = numerator(half_y) / denominator(half_y) + 1;  // floor, y >= 0
    BigInt cap = BigInt(1) << level;
    if (j < 1) j = 1;
    if (j > cap) j = cap;
    std::int64_t m = ((std::int64_t(1) << level) - 1 + j.convert_to<std::int64_t>());
    cert.dense_indices.push_back(m);
  }
  return cert;
}

bool verify_certificate(const NonConjugacyCertificate& cert, const SequenceSpec& a,
                        const SequenceSpec& b, const LayoutParams& params) {
  try {
    params.validate();
    if (!a.decidable() || !b.decidable()) return false;
    if (cert.residue.start < 1 || cert.residue.period < 1) return false;
    if (cert.value_a == cert.value_b) return false;
    if (cert.gap != rat_abs(cert.value_a - cert.value_b)) return false;
    // The residue class must live in the periodic tails and respect both
    // periods; then three sampled periods pin the constant values exactly.
    if (cert.residue.start <= std::max(a.prefix_length(), b.prefix_length())) return false;
    if (cert.residue.period % std::lcm(a.period(), b.period()) != 0) return false;
    for (std::int64_t t = 0; t < 3; ++t) {
      const std::int64_t j = cert.residue.start + t * cert.residue.period;
      if (a.value(j) != cert.value_a) return false;
      if (b.value(j) != cert.value_b) return false;
    }
    if (cert.dense_indices.empty()) return false;
    std::int64_t prev = 0;
    for (std::size_t k = 0; k < cert.dense_indices.size(); ++k) {
      const std::int64_t m = cert.dense_indices[k];
      if (m <= prev) return false;
      prev = m;
      const Rat tol(1, BigInt(1) << (k + 1));
      if (!(rat_abs(params.dense(m) - cert.value_a) < tol)) return false;
    }
    // Interleaved center dichotomy: on the alpha side the even-strip centers
    // (last coordinate value_a) and the odd-strip dense centers share the
    // limit value_a; on the beta side the dense tail must separate from
    // value_b, which needs 2^-K < gap/2 at the deepest index.
    const auto K = static_cast<std::int64_t>(cert.dense_indices.size());
    if (!(Rat(2) < cert.gap * Rat(BigInt(1) << K))) return false;
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace c0dynamo

#include "c0dynamo/geometry.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace c0dynamo {

namespace {

BigInt big(std::int64_t v) { return BigInt(v); }

struct Registries {
  std::map<std::string, RadiusRule> radius;
  std::map<std::string, DenseRule> dense;
  std::mutex mu;
  Registries() {
    radius["quarter"] = quarter_radius;
    dense["dyadic"] = dyadic_dense;
  }
};

Registries& registries() {
  static Registries r;
  return r;
}

}  // namespace

Strip strip(std::int64_t n) {
  if (n < 1) throw std::domain_error("strip index must be >= 1");
  return Strip{n, Rat(1, big(n) + 1), Rat(1, big(n))};
}

Rat strip_midline(std::int64_t n) {
  if (n < 1) throw std::domain_error("strip index must be >= 1");
  // (1/n + 1/(n+1)) / 2 = (2n+1) / (2n(n+1))
  return Rat(2 * big(n) + 1, 2 * big(n) * (big(n) + 1));
}

std::int64_t strip_index(double x1) {
  if (!(x1 > 0.0) || x1 > 1.0)
    throw std::domain_error("strip_index: x1 must be in (0, 1]");
  if (x1 < 0x1p-62) throw std::domain_error("strip_index: index exceeds 64-bit range");
  auto n = static_cast<std::int64_t>(1.0 / x1);
  // Correct the floating estimate exactly: want n*x1 <= 1 < (n+1)*x1. The
  // fused sign of n*x1 - 1 is exact because the product is a dyadic rational
  // well above the subnormal range here.
  while (n > 1 && std::fma(static_cast<double>(n), x1, -1.0) > 0.0) --n;
  while (std::fma(static_cast<double>(n + 1), x1, -1.0) <= 0.0) ++n;
  return n;
}

std::int64_t strip_index(const Rat& x1) {
  if (x1 <= 0 || x1 > 1) throw std::domain_error("strip_index: x1 must be in (0, 1]");
  BigInt num = numerator(x1), den = denominator(x1);
  BigInt n = den / num;  // floor(1/x1); equals 1/x1 exactly at boundaries
  if (n > big(std::int64_t(1) << 62))
    throw std::domain_error("strip_index: index exceeds 64-bit range");
  return n.convert_to<std::int64_t>();
}

Rat quarter_radius(std::int64_t n) {
  if (n < 1) throw std::domain_error("radius rule: n must be >= 1");
  return Rat(1, 4 * big(n) * (big(n) + 1));
}

Rat dyadic_dense(std::int64_t n) {
  if (n < 1) throw std::domain_error("dense rule: n must be >= 1");
  int level = std::bit_width(static_cast<std::uint64_t>(n)) - 1;  // floor(log2 n)
  std::int64_t j = n - (std::int64_t(1) << level) + 1;
  // 1/4 + (2j-1) / 2^(level+2)
  return Rat(1, 4) + Rat(2 * big(j) - 1, BigInt(1) << (level + 2));
}

void register_radius_rule(const std::string& name, RadiusRule rule) {
  auto& r = registries();
  std::lock_guard lock(r.mu);
  r.radius[name] = std::move(rule);
}

void register_dense_rule(const std::string& name, DenseRule rule) {
  auto& r = registries();
  std::lock_guard lock(r.mu);
  r.dense[name] = std::move(rule);
}

RadiusRule radius_rule(const std::string& name) {
  auto& r = registries();
  std::lock_guard lock(r.mu);
  auto it = r.radius.find(name);
  if (it == r.radius.end()) throw std::invalid_argument("unknown radius rule '" + name + "'");
  return it->second;
}

DenseRule dense_rule(const std::string& name) {
  auto& r = registries();
  std::lock_guard lock(r.mu);
  auto it = r.dense.find(name);
  if (it == r.dense.end()) throw std::invalid_argument("unknown dense rule '" + name + "'");
  return it->second;
}

Rat LayoutParams::radius(std::int64_t n) const { return c0dynamo::radius_rule(radius_rule)(n); }

Rat LayoutParams::dense(std::int64_t n) const { return c0dynamo::dense_rule(dense_rule)(n); }

void LayoutParams::validate() const {
  if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
  (void)c0dynamo::radius_rule(radius_rule);
  (void)c0dynamo::dense_rule(dense_rule);
}

std::optional<DiskSpec> layout(const LayoutParams& params, const SequenceSpec& spec,
                               std::int64_t n) {
  params.validate();
  if (n < 1) throw std::domain_error("layout: strip index must be >= 1");
  if (n % 2 == 0 && !spec.decidable())
    throw std::invalid_argument("layout: exact layout requires a decidable spec");
  if (n == 1) return std::nullopt;
  Rat v = (n % 2 == 0) ? spec.value(n / 2) : params.dense((n - 1) / 2);
  RatPoint center(static_cast<std::size_t>(params.dimension), Rat(1, 2));
  center.front() = strip_midline(n);
  center.back() = std::move(v);
  return DiskSpec{std::move(center), params.radius(n)};
}

std::optional<NumericDisk> layout_numeric(const LayoutParams& params, const SequenceSpec& spec,
                                          std::int64_t n) {
  params.validate();
  if (n < 1) throw std::domain_error("layout: strip index must be >= 1");
  if (n == 1) return std::nullopt;
  double v = (n % 2 == 0) ? spec.value_approx(n / 2) : to_double(params.dense((n - 1) / 2));
  Point center(static_cast<std::size_t>(params.dimension), 0.5);
  center.front() = to_double(strip_midline(n));
  center.back() = v;
  return NumericDisk{std::move(center), to_double(params.radius(n))};
}

ContainmentResult containment_check(const LayoutParams& params, const SequenceSpec& spec,
                                    std::int64_t n) {
  params.validate();
  if (n < 1) throw std::domain_error("containment_check: strip index must be >= 1");
  if (n == 1) return {true, true};  // nothing placed, vacuously contained
  // A Euclidean ball lies in a box iff its per-axis bounding interval does.
  if (spec.decidable() || n % 2 == 1) {
    auto disk = layout(params, spec, n);
    Strip h = strip(n);
    const Rat& r = disk->radius;
    const RatPoint& c = disk->center;
    bool ok = c.front() - r > h.lo && c.front() + r < h.hi;
    for (std::size_t i = 1; ok && i < c.size(); ++i)
      ok = c[i] - r > 0 && c[i] + r < 1;
    return {ok, true};
  }
  // Opaque even strip: numeric fallback with a tolerance margin.
  auto disk = layout_numeric(params, spec, n);
  Strip h = strip(n);
  const double eps = 1e-12;
  const double r = disk->radius;
  const Point& c = disk->center;
  bool ok = c.front() - r > to_double(h.lo) + eps && c.front() + r < to_double(h.hi) - eps;
  for (std::size_t i = 1; ok && i < c.size(); ++i)
    ok = c[i] - r > eps && c[i] + r < 1 - eps;
  return {ok, false};
}

}  // namespace c0dynamo

#include "polyent/lab/separation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>
#include <type_traits>
#include <unordered_map>

#include "polyent/cohomology/growth.hpp"
#include "polyent/common/numeric.hpp"
#include "polyent/common/random.hpp"
#include "polyent/lab/bowen.hpp"

namespace polyent::lab {

namespace {

constexpr std::size_t kMaxHashAxes = 4;

struct HashAxis {
  double cell;  // side length, >= Lipschitz constant * eps
  long cells;   // number of cells for periodic features, 0 otherwise
};

HashAxis make_axis(double lipschitz, double period, double eps) {
  HashAxis a{lipschitz * eps, 0};
  if (period > 0) {
    a.cells = std::max<long>(1, static_cast<long>(std::floor(period / a.cell)));
    a.cell = period / static_cast<double>(a.cells);
  }
  return a;
}

// Generic oracle: stores every accepted orbit in single precision and checks
// closeness time by time in spread order with early exit.
template <class Sys>
class OrbitOracle {
 public:
  OrbitOracle(const Sys& sys, std::size_t n, double eps)
      : sys_(sys), n_(n), eps_(eps), dim_(sys.state_dim()), order_(spread_time_order(n)), orbit_(n * dim_),
        orbit_f_(n * dim_) {
    std::vector<std::size_t> times{n - 1};
    if (n > 1) times.push_back(0);
    const std::size_t per_time = std::min<std::size_t>(sys.feature_count(), times.size() == 1 ? 4 : 2);
    for (std::size_t t : times)
      for (std::size_t f = 0; f < per_time && axes.size() < kMaxHashAxes; ++f) {
        axes.push_back(make_axis(sys.feature_lipschitz(f), sys.feature_period(f), eps));
        feature_at_.emplace_back(t, f);
      }
  }

  std::vector<HashAxis> axes;

  void load(const zoo::Point& p) {
    double* o = orbit_.data();
    std::copy(p.begin(), p.end(), o);
    for (std::size_t t = 1; t < n_; ++t) {
      std::copy(o + (t - 1) * dim_, o + t * dim_, o + t * dim_);
      sys_.step(o + t * dim_);
    }
    for (std::size_t i = 0; i < orbit_.size(); ++i) orbit_f_[i] = static_cast<float>(orbit_[i]);
  }
  double feature(std::size_t axis) const {
    const auto [t, f] = feature_at_[axis];
    return sys_.feature(&orbit_[t * dim_], f);
  }
  bool close(std::uint32_t id) const {
    const float* c = &centers_[static_cast<std::size_t>(id) * n_ * dim_];
    const float* q = orbit_f_.data();
    for (std::size_t t : order_)
      if (sys_.distance(q + t * dim_, c + t * dim_) > eps_) return false;
    return true;
  }
  std::size_t bytes_after_accept() const { return (centers_.size() + orbit_f_.size()) * sizeof(float); }
  void accept() { centers_.insert(centers_.end(), orbit_f_.begin(), orbit_f_.end()); }

 private:
  const Sys& sys_;
  std::size_t n_;
  double eps_;
  std::size_t dim_;
  std::vector<std::size_t> order_;
  std::vector<std::pair<std::size_t, std::size_t>> feature_at_;
  std::vector<double> orbit_;
  std::vector<float> orbit_f_;
  std::vector<float> centers_;
};

// Unipotent torus maps: f^t p - f^t c = A^t (p - c) mod 1, so only initial
// points are stored and d_n is evaluated on the difference vector. When
// N = A - I has N^3 = 0 and ||A|| eps <= 1/2, every coordinate of A^t delta
// is a quadratic in t and stays unwrapped until it first exceeds eps, which
// makes the max over t in [0, n) an O(d^2) computation.
class UnipotentTorusOracle {
 public:
  static bool applicable(const zoo::TorusAffineMap& m) { return cohomology::is_unipotent(m.matrix()); }

  UnipotentTorusOracle(const zoo::TorusAffineMap& m, std::size_t n, double eps)
      : n_(n), eps_(eps), d_(m.dim()), a_(d_ * d_), nil_(d_ * d_), nil2_(d_ * d_), last_(d_ * d_),
        last_shift_(d_, 0.0), p_(d_), last_p_(d_) {
    const auto& a = m.matrix();
    const cohomology::IntMatrix nil = a - cohomology::IntMatrix::identity(d_);
    const cohomology::IntMatrix nil2 = nil * nil;
    const cohomology::IntMatrix last = a.pow(n - 1);
    double row_norm = 0.0, last_max = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < d_; ++j) {
        a_[i * d_ + j] = a.entry_as_double(i, j);
        nil_[i * d_ + j] = nil.entry_as_double(i, j);
        nil2_[i * d_ + j] = nil2.entry_as_double(i, j);
        last_[i * d_ + j] = last.entry_as_double(i, j);
        r += std::abs(a_[i * d_ + j]);
        last_max = std::max(last_max, std::abs(last_[i * d_ + j]));
      }
      row_norm = std::max(row_norm, r);
    }
    quadratic_ = (nil2 * nil).is_zero() && row_norm * eps <= 0.5;
    // The time n-1 image is only trusted when A^{n-1} p mod 1 keeps ~1e-9 accuracy.
    use_last_ = n > 1 && last_max * static_cast<double>(d_) < 1e6;
    if (use_last_) {
      last_shift_ = m.iterate_exact(std::vector<double>(d_, 0.0), static_cast<std::int64_t>(n - 1));
    }
    const std::size_t per_time = std::min<std::size_t>(d_, use_last_ ? 2 : 4);
    if (use_last_)
      for (std::size_t f = 0; f < per_time; ++f) {
        axes.push_back(make_axis(1.0, 1.0, eps));
        feature_at_.emplace_back(1, f);
      }
    for (std::size_t f = 0; f < per_time; ++f) {
      axes.push_back(make_axis(1.0, 1.0, eps));
      feature_at_.emplace_back(0, f);
    }
  }

  std::vector<HashAxis> axes;

  void load(const zoo::Point& p) {
    std::copy(p.begin(), p.end(), p_.begin());
    if (!use_last_) return;
    for (std::size_t i = 0; i < d_; ++i) {
      double s = last_shift_[i];
      for (std::size_t j = 0; j < d_; ++j) s += last_[i * d_ + j] * p_[j];
      last_p_[i] = s - std::floor(s);
    }
  }
  double feature(std::size_t axis) const {
    const auto [t, f] = feature_at_[axis];
    return t == 0 ? p_[f] : last_p_[f];
  }
  bool close(std::uint32_t id) const {
    const double* c = &centers_[static_cast<std::size_t>(id) * d_];
    double v[zoo::TorusAffineMap::kMaxDim];
    for (std::size_t i = 0; i < d_; ++i) {
      v[i] = p_[i] - c[i];
      v[i] -= std::nearbyint(v[i]);
      if (std::abs(v[i]) > eps_) return false;
    }
    if (use_last_)
      for (std::size_t i = 0; i < d_; ++i) {
        double w = 0.0;
        for (std::size_t j = 0; j < d_; ++j) w += last_[i * d_ + j] * v[j];
        if (std::abs(w - std::nearbyint(w)) > eps_) return false;
      }
    if (quadratic_) return quadratic_max(v) <= eps_;
    double w[zoo::TorusAffineMap::kMaxDim];
    for (std::size_t t = 1; t < n_; ++t) {
      for (std::size_t i = 0; i < d_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d_; ++j) s += a_[i * d_ + j] * v[j];
        w[i] = s - std::nearbyint(s);
      }
      for (std::size_t i = 0; i < d_; ++i) {
        v[i] = w[i];
        if (std::abs(v[i]) > eps_) return false;
      }
    }
    return true;
  }
  std::size_t bytes_after_accept() const { return (centers_.size() + d_) * sizeof(double); }
  void accept() { centers_.insert(centers_.end(), p_.begin(), p_.end()); }

 private:
  // max_{0 <= t < n} |(A^t v)_i| over i, with A^t v = v + t N v + C(t,2) N^2 v.
  double quadratic_max(const double* v) const {
    const double last = static_cast<double>(n_ - 1);
    double best = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
      double b = 0.0, c = 0.0;
      for (std::size_t j = 0; j < d_; ++j) {
        b += nil_[i * d_ + j] * v[j];
        c += nil2_[i * d_ + j] * v[j];
      }
      auto at = [&](double t) { return std::abs(v[i] + t * b + 0.5 * t * (t - 1.0) * c); };
      best = std::max({best, at(0.0), at(last)});
      if (c != 0.0) {
        const double vertex = 0.5 - b / c;
        for (double t : {std::floor(vertex), std::ceil(vertex)})
          if (t > 0.0 && t < last) best = std::max(best, at(t));
      }
    }
    return best;
  }

  std::size_t n_;
  double eps_;
  std::size_t d_;
  std::vector<double> a_, nil_, nil2_, last_;
  std::vector<double> last_shift_;
  bool quadratic_ = false;
  bool use_last_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> feature_at_;
  std::vector<double> p_, last_p_;
  std::vector<double> centers_;
};

template <class Oracle>
class GreedySeparator {
 public:
  GreedySeparator(Oracle& oracle, std::size_t budget_bytes) : oracle_(oracle), budget_bytes_(budget_bytes) {}

  // True when the candidate joins the separated set. Sets budget_hit instead
  // of growing past the memory budget.
  bool offer(const zoo::Point& p) {
    oracle_.load(p);
    const auto& axes = oracle_.axes;
    long cell[kMaxHashAxes] = {0, 0, 0, 0};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = oracle_.feature(a);
      long c = static_cast<long>(std::floor(v / axes[a].cell));
      if (axes[a].cells > 0) c = wrap(c, axes[a].cells);
      cell[a] = c;
    }
    if (has_close_center(cell)) return false;
    if (oracle_.bytes_after_accept() > budget_bytes_) {
      budget_hit = true;
      return false;
    }
    oracle_.accept();
    grid_[pack(cell, nullptr)].push_back(static_cast<std::uint32_t>(count_));
    ++count_;
    return true;
  }

  std::size_t count() const { return count_; }
  bool budget_hit = false;

 private:
  static long wrap(long c, long m) {
    c %= m;
    return c < 0 ? c + m : c;
  }

  std::uint64_t pack(const long* cell, const long* offset) const {
    std::uint64_t key = 0;
    for (std::size_t a = 0; a < oracle_.axes.size(); ++a) {
      long c = cell[a] + (offset ? offset[a] : 0);
      if (oracle_.axes[a].cells > 0) c = wrap(c, oracle_.axes[a].cells);
      key = (key << 16) | static_cast<std::uint64_t>((c + 32768) & 0xffff);
    }
    return key;
  }

  // Scans the 3^K neighbouring cells; duplicates arise when a periodic axis
  // has fewer than three cells.
  bool has_close_center(const long* cell) {
    const std::size_t k = oracle_.axes.size();
    std::size_t total = 1;
    for (std::size_t a = 0; a < k; ++a) total *= 3;
    keys_.clear();
    long off[kMaxHashAxes] = {0, 0, 0, 0};
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t a = 0; a < k; ++a) {
        off[a] = static_cast<long>(rem % 3) - 1;
        rem /= 3;
      }
      keys_.push_back(pack(cell, off));
    }
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    for (std::uint64_t key : keys_) {
      auto it = grid_.find(key);
      if (it == grid_.end()) continue;
      for (std::uint32_t id : it->second)
        if (oracle_.close(id)) return true;
    }
    return false;
  }

  Oracle& oracle_;
  std::size_t budget_bytes_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid_;
  std::vector<std::uint64_t> keys_;
  std::size_t count_ = 0;
};

template <class Oracle>
void run_with(Oracle& oracle, const std::vector<zoo::Point>& pool, std::size_t budget_bytes, SeparationRecord& rec,
              std::vector<std::size_t>* indices) {
  GreedySeparator sep(oracle, budget_bytes);
  const std::size_t half = pool.size() / 2;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == half) rec.half_pool_count = sep.count();
    if (sep.offer(pool[i]) && indices) indices->push_back(i);
    if (sep.budget_hit) {
      rec.pool_used = i;
      break;
    }
  }
  if (pool.size() == 1) rec.half_pool_count = sep.count();
  rec.greedy_count = sep.count();
  rec.budget_exceeded = sep.budget_hit;
}

SeparationRecord run_greedy(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool, std::size_t n, double eps,
                            std::size_t budget_bytes, double threshold, std::vector<std::size_t>* indices) {
  if (n == 0) throw std::invalid_argument("greedy_separated_count: n must be at least 1");
  if (!(eps > 0.0)) throw std::invalid_argument("greedy_separated_count: eps must be positive");
  if (pool.empty()) throw std::invalid_argument("greedy_separated_count: empty pool");
  SeparationRecord rec;
  rec.eps = eps;
  rec.n = n;
  rec.pool_used = pool.size();
  std::visit(
      [&](const auto& sys) {
        using Sys = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<Sys, zoo::TorusAffineMap>) {
          if (UnipotentTorusOracle::applicable(sys)) {
            UnipotentTorusOracle oracle(sys, n, eps);
            run_with(oracle, pool, budget_bytes, rec, indices);
            return;
          }
        }
        OrbitOracle<Sys> oracle(sys, n, eps);
        run_with(oracle, pool, budget_bytes, rec, indices);
      },
      s);
  rec.sep_count = rec.greedy_count;
  const double gain = static_cast<double>(rec.greedy_count - rec.half_pool_count);
  rec.saturated = !rec.budget_exceeded && gain < threshold * static_cast<double>(rec.greedy_count);
  return rec;
}

}  // namespace

const std::vector<std::size_t>& BowenParams::schedule() const {
  if (!n_schedule.empty()) return n_schedule;
  if (default_schedule_.empty()) default_schedule_ = geometric_schedule(16, 4096, 2.0);
  return default_schedule_;
}

void BowenParams::validate() const {
  if (eps_list.empty()) throw std::invalid_argument("BowenParams: eps_list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw std::invalid_argument("BowenParams: eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw std::invalid_argument("BowenParams: eps_list must be strictly decreasing");
    }
  }
  const auto& ns = schedule();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0) throw std::invalid_argument("BowenParams: n values must be positive");
    if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("BowenParams: n_schedule must be strictly increasing");
  }
  if (pool_size < 1000) throw std::invalid_argument("BowenParams: pool_size must be at least 1000");
  if (!(saturation_threshold > 0.0 && saturation_threshold < 1.0)) {
    throw std::invalid_argument("BowenParams: saturation_threshold must lie in (0, 1)");
  }
}

std::vector<std::size_t> BowenParams::geometric_schedule(std::size_t lo, std::size_t hi, double ratio) {
  if (lo == 0 || hi < lo || !(ratio > 1.0)) throw std::invalid_argument("geometric_schedule: bad range or ratio");
  std::vector<std::size_t> out;
  for (double v = static_cast<double>(lo); v <= static_cast<double>(hi) * (1 + 1e-12); v *= ratio) {
    const auto r = static_cast<std::size_t>(std::llround(v));
    if (out.empty() || r > out.back()) out.push_back(r);
  }
  return out;
}

std::vector<zoo::Point> draw_pool(const zoo::DynSystem& s, const BowenParams& params) {
  if (!params.restriction) return zoo::sample_points(s, params.sampler, params.pool_size, derive_seed(params.seed, {1}));
  std::vector<zoo::Point> pool;
  std::size_t drawn = 0;
  for (std::uint64_t batch = 0; pool.size() < params.pool_size; ++batch) {
    const std::size_t want = std::max<std::size_t>(1000, params.pool_size - pool.size());
    auto pts = zoo::sample_points(s, params.sampler, want, derive_seed(params.seed, {1, batch}));
    drawn += pts.size();
    for (auto& p : pts) {
      if (pool.size() == params.pool_size) break;
      if (params.restriction(p)) pool.push_back(std::move(p));
    }
    if (pool.empty() && drawn >= 1000) {
      throw std::invalid_argument("restriction " + params.restriction_label + " keeps no sampled point");
    }
    if (drawn >= 1000 && static_cast<double>(pool.size()) < 0.1 * static_cast<double>(drawn) &&
        pool.size() < params.pool_size) {
      throw std::invalid_argument("restriction " + params.restriction_label + " keeps " +
                                  std::to_string(pool.size()) + " of " + std::to_string(drawn) +
                                  " draws (< 10%)");
    }
  }
  return pool;
}

SeparationRecord greedy_separated_count(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool, std::size_t n,
                                        double eps, std::size_t memory_budget_mb, double saturation_threshold) {
  return run_greedy(s, pool, n, eps, memory_budget_mb << 20, saturation_threshold, nullptr);
}

SeparationRecord greedy_separated_count(const zoo::DynSystem& s, const BowenParams& params, std::size_t n,
                                        double eps) {
  params.validate();
  SeparationRecord r = greedy_separated_count(s, draw_pool(s, params), n, eps, params.memory_budget_mb,
                                              params.saturation_threshold);
  r.seed = params.seed;
  return r;
}

std::vector<std::size_t> greedy_separated_indices(const zoo::DynSystem& s, const std::vector<zoo::Point>& pool,
                                                  std::size_t n, double eps) {
  std::vector<std::size_t> idx;
  run_greedy(s, pool, n, eps, std::size_t{1} << 40, 0.02, &idx);
  return idx;
}

SeparationCurve separation_curve(const zoo::DynSystem& s, const BowenParams& params, const std::string& name) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<zoo::Point> pool = draw_pool(s, params);
  const auto& ns = params.schedule();
  const std::size_t ne = params.eps_list.size(), nn = ns.size();
  std::vector<SeparationRecord> recs(ne * nn);

  unsigned workers = params.workers ? params.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, recs.size()));
  const std::size_t budget = (params.memory_budget_mb << 20) / std::max(1u, workers);
  // Largest cells first so the tail of the schedule does not serialize.
  std::vector<std::size_t> work(recs.size());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = i;
  std::stable_sort(work.begin(), work.end(), [&](std::size_t a, std::size_t b) { return ns[a % nn] > ns[b % nn]; });
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t w = next++; w < work.size(); w = next++) {
      const std::size_t cell = work[w];
      try {
        recs[cell] = run_greedy(s, pool, ns[cell % nn], params.eps_list[cell / nn], budget,
                                params.saturation_threshold, nullptr);
        recs[cell].seed = params.seed;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < workers; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  SeparationCurve curve;
  curve.system = name;
  // A set separated at time n (resp. radius eps) stays separated at n' > n
  // (resp. eps' < eps), so counts may be raised to their predecessors.
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t i = 0; i < nn; ++i) {
      auto& r = recs[e * nn + i];
      std::size_t floor_count = 0;
      if (i > 0) floor_count = recs[e * nn + i - 1].sep_count;
      if (e > 0) floor_count = std::max(floor_count, recs[(e - 1) * nn + i].sep_count);
      if (floor_count > r.sep_count) {
        r.sep_count = floor_count;
        ++curve.envelope_adjustments;
      }
    }
  curve.records = std::move(recs);

  // d_n monotonicity on sampled pool pairs.
  Rng rng = make_rng(params.seed, {2});
  const std::size_t n_max = ns.back();
  for (int k = 0; k < 16 && pool.size() > 1; ++k) {
    const auto& p = pool[rng() % pool.size()];
    const auto& q = pool[rng() % pool.size()];
    const auto prof = bowen_profile(s, p, q, std::min<std::size_t>(n_max, 4096));
    for (std::size_t j = 1; j < prof.size(); ++j)
      if (prof[j] < prof[j - 1]) curve.bowen_monotone = false;
  }
  curve.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return curve;
}

ExponentFit fit_exponent(const SeparationCurve& curve) {
  ExponentFit fit;
  fit.curve = curve;
  fit.caveat = "finite-window least squares; cannot distinguish limsup from lim, eps -> 0 approximated by max over eps";
  std::vector<double> eps_values;
  for (const auto& r : curve.records)
    if (std::find(eps_values.begin(), eps_values.end(), r.eps) == eps_values.end()) eps_values.push_back(r.eps);
  bool any = false;
  for (double eps : eps_values) {
    std::vector<const SeparationRecord*> rows;
    for (const auto& r : curve.records)
      if (r.eps == eps) rows.push_back(&r);
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->n < b->n; });
    // Longest run of saturated records; later runs win ties.
    std::size_t best_lo = 0, best_len = 0;
    for (std::size_t i = 0; i < rows.size();) {
      if (!rows[i]->saturated) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < rows.size() && rows[j]->saturated) ++j;
      if (j - i >= best_len) {
        best_len = j - i;
        best_lo = i;
      }
      i = j;
    }
    EpsFit ef;
    ef.eps = eps;
    ef.points = best_len;
    if (best_len >= 4) {
      std::vector<double> xs, ys;
      for (std::size_t i = best_lo; i < best_lo + best_len; ++i) {
        xs.push_back(std::log(static_cast<double>(rows[i]->n)));
        ys.push_back(std::log(static_cast<double>(std::max<std::size_t>(1, rows[i]->sep_count))));
      }
      const LineFit lf = fit_line(xs, ys);
      ef.usable = true;
      ef.slope = lf.slope;
      ef.intercept = lf.intercept;
      ef.r_squared = lf.r_squared;
      ef.n_lo = rows[best_lo]->n;
      ef.n_hi = rows[best_lo + best_len - 1]->n;
      if (!any || ef.slope > fit.slope) {
        fit.slope = ef.slope;
        fit.intercept = ef.intercept;
        fit.r_squared = ef.r_squared;
        fit.n_lo = ef.n_lo;
        fit.n_hi = ef.n_hi;
        fit.chosen_eps = eps;
      }
      any = true;
    }
    fit.per_eps.push_back(ef);
  }
  if (!any) {
    throw InsufficientData("estimate_hpol: fewer than 4 consecutive saturated n values at every eps (system " +
                           curve.system + ")");
  }
  return fit;
}

ExponentFit estimate_hpol(const zoo::DynSystem& s, const BowenParams& params, const std::string& name) {
  return fit_exponent(separation_curve(s, params, name));
}

ExponentFit restricted_estimate(const zoo::DynSystem& s, const BowenParams& params, const std::string& name) {
  if (!params.restriction) throw std::invalid_argument("restricted_estimate: no restriction given");
  return estimate_hpol(s, params, name);
}

}  // namespace polyent::lab

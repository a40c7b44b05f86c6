#include "injrad/warped.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "injrad/error.hpp"

namespace injrad::warped {
namespace {

constexpr double kBoundaryTolerance = 1e-6;
constexpr double kDeltaFloor = 1e-7;

class CoshProfile final : public Profile {
 public:
  std::string name() const override { return "cosh"; }
  bool closed_form() const override { return true; }
  double t_max() const override { return std::numeric_limits<double>::infinity(); }
  double f(double t, double) const override { return std::cosh(t); }
  double f_t(double t, double) const override { return std::sinh(t); }
  double f_tt(double t, double) const override { return std::cosh(t); }
  double f_ttt(double t, double) const override { return std::sinh(t); }
};

class FlatProfile final : public Profile {
 public:
  std::string name() const override { return "flat"; }
  bool closed_form() const override { return true; }
  double t_max() const override { return std::numeric_limits<double>::infinity(); }
  double f(double, double) const override { return 1.0; }
  double f_t(double, double) const override { return 0.0; }
  double f_tt(double, double) const override { return 0.0; }
  double f_ttt(double, double) const override { return 0.0; }
};

class CosProfile final : public Profile {
 public:
  std::string name() const override { return "cos"; }
  bool closed_form() const override { return true; }
  double t_max() const override { return M_PI / 2.0; }
  double f(double t, double) const override { return std::cos(t); }
  double f_t(double t, double) const override { return -std::sin(t); }
  double f_tt(double t, double) const override { return -std::cos(t); }
  double f_ttt(double t, double) const override { return std::sin(t); }
};

class SeriesProfile final : public Profile {
 public:
  SeriesProfile(std::vector<double> b, std::vector<double> c, double ell)
      : b_(std::move(b)), c_(std::move(c)), ell_(ell) {
    if (!(ell_ > 0.0)) throw Error(Errc::invalid_argument, "series profile needs ell > 0");
    c_.resize(std::max(b_.size(), c_.size()), 0.0);
    b_.resize(c_.size(), 0.0);
  }
  std::string name() const override { return "series"; }
  bool closed_form() const override { return true; }
  double t_max() const override { return std::numeric_limits<double>::infinity(); }
  double f(double t, double th) const override { return eval(t, th, 0); }
  double f_t(double t, double th) const override { return eval(t, th, 1); }
  double f_tt(double t, double th) const override { return eval(t, th, 2); }
  double f_ttt(double t, double th) const override { return eval(t, th, 3); }

 private:
  double eval(double t, double theta, int order) const {
    const double wave = std::cos(2.0 * M_PI * theta / ell_);
    double sum = order == 0 ? 1.0 : 0.0;
    for (std::size_t k = 0; k < b_.size(); ++k) {
      const int j = static_cast<int>(k) + 2;
      if (j < order) continue;
      double falling = 1.0;
      for (int i = 0; i < order; ++i) falling *= j - i;
      sum += (b_[k] + c_[k] * wave) * falling * std::pow(t, j - order);
    }
    return sum;
  }

  std::vector<double> b_;
  std::vector<double> c_;
  double ell_;
};

class SampledProfile final : public Profile {
 public:
  SampledProfile(std::vector<double> thetas, double dt, std::vector<std::vector<double>> columns,
                 double ell)
      : thetas_(std::move(thetas)), dt_(dt), ell_(ell) {
    const std::size_t n = columns.front().size();
    t_max_ = dt_ * static_cast<double>(n - 1);
    for (const auto& col : columns) {
      std::vector<double> mirrored;
      mirrored.reserve(2 * n - 1);
      for (std::size_t i = n - 1; i > 0; --i) mirrored.push_back(col[i]);
      mirrored.insert(mirrored.end(), col.begin(), col.end());
      splines_.emplace_back(mirrored, -t_max_, dt_);
    }
  }

  std::string name() const override { return "sampled"; }
  bool closed_form() const override { return false; }
  double t_max() const override { return t_max_; }
  double f(double t, double th) const override {
    return blend(th, [t](const Spline& s) { return s(t); });
  }
  double f_t(double t, double th) const override {
    return blend(th, [t](const Spline& s) { return s.prime(t); });
  }
  double f_tt(double t, double th) const override {
    return blend(th, [t](const Spline& s) { return s.double_prime(t); });
  }
  double f_ttt(double t, double th) const override {
    const double h = dt_ / 8.0;
    const double hi = std::min(t + h, t_max_);
    const double lo = hi - 2.0 * h;
    return (f_tt(hi, th) - f_tt(lo, th)) / (hi - lo);
  }

 private:
  using Spline = boost::math::interpolators::cardinal_quintic_b_spline<double>;

  template <class Fn>
  double blend(double theta, Fn&& fn) const {
    if (splines_.size() == 1) return fn(splines_.front());
    double th = std::fmod(theta, ell_);
    if (th < 0) th += ell_;
    auto it = std::upper_bound(thetas_.begin(), thetas_.end(), th);
    std::size_t hi = static_cast<std::size_t>(it - thetas_.begin()) % thetas_.size();
    std::size_t lo = (hi + thetas_.size() - 1) % thetas_.size();
    double left = thetas_[lo];
    double right = thetas_[hi];
    if (right <= left) right += ell_;
    if (th < left) th += ell_;
    const double w = (th - left) / (right - left);
    return (1.0 - w) * fn(splines_[lo]) + w * fn(splines_[hi]);
  }

  std::vector<double> thetas_;
  double dt_;
  double ell_;
  double t_max_ = 0.0;
  std::vector<Spline> splines_;
};

bool parse_row(const std::string& line, double out[3]) {
  std::istringstream in(line);
  std::string cell;
  int k = 0;
  while (std::getline(in, cell, ',')) {
    if (k >= 3) return false;
    char* end = nullptr;
    out[k] = std::strtod(cell.c_str(), &end);
    while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
    if (end == cell.c_str() || (end && *end != '\0')) return false;
    ++k;
  }
  return k == 3;
}

// Fourth derivative by a 5-point stencil.
template <class Fn>
double fourth_difference(Fn&& g, double t, double h) {
  return (g(t + 2 * h) - 4 * g(t + h) + 6 * g(t) - 4 * g(t - h) + g(t - 2 * h)) / (h * h * h * h);
}

template <class Fn>
double second_difference(Fn&& g, double t, double h) {
  return (-g(t + 2 * h) + 16 * g(t + h) - 30 * g(t) + 16 * g(t - h) - g(t - 2 * h)) / (12 * h * h);
}

struct Selection {
  double delta;
  double N;
};

Selection select_delta(double eps, double t0, double M, double A) {
  const auto cap = [&](double N) {
    double d = std::min({eps, t0 / 2.0, 1.0, 2.0 * eps / t0});
    if (M > 0.0) d = std::min(d, eps / (10.0 * M));
    if (N > 0.0) d = std::min(d, std::sqrt(1.0 / (2.0 * N)));
    return d;
  };
  double d = cap(A);
  for (int it = 0; it < 200; ++it) {
    const double next = cap(A + M * d);
    if (next == d) break;
    d = next;
  }
  double N = A + M * d;
  if (N > 0.0 && d > std::sqrt(1.0 / (2.0 * N))) {
    d = std::sqrt(1.0 / (2.0 * N)) * (1.0 - 1e-12);
    N = A + M * d;
  }
  if (d * t0 / 4.0 < kDeltaFloor) {
    throw Error(Errc::budget_exceeded, "delta underflow: delta t0/4 = " +
                                           std::to_string(d * t0 / 4.0) + " is below " +
                                           std::to_string(kDeltaFloor));
  }
  return {d, N};
}

double sup_f_ttt(const WarpedMetric& wm, const SmoothingOptions& opt) {
  double m = 0.0;
  for (int j = 0; j < opt.ntheta; ++j) {
    const double th = wm.ell() * j / opt.ntheta;
    for (int i = 0; i < opt.nt; ++i) {
      const double v = std::abs(wm.profile().f_ttt(wm.t0() * i / opt.nt, th));
      if (!std::isfinite(v)) throw Error(Errc::domain, "M estimation failed (non-finite f_ttt)");
      m = std::max(m, v);
    }
  }
  return m;
}

double half_second_at_zero(const WarpedMetric& wm, const SmoothingOptions& opt) {
  double a = 0.0;
  for (int j = 0; j < opt.ntheta; ++j) {
    const double v = std::abs(wm.profile().f_tt(0.0, wm.ell() * j / opt.ntheta)) / 2.0;
    if (!std::isfinite(v)) throw Error(Errc::domain, "N estimation failed (non-finite f_tt)");
    a = std::max(a, v);
  }
  return a;
}

void precheck_class(const WarpedMetric& wm) {
  constexpr int nt = 256, nth = 16;
  for (int j = 0; j < nth; ++j) {
    const double th = wm.ell() * j / nth;
    for (int i = 0; i < nt; ++i) {
      const double t = wm.t0() * i / nt;
      const double k = curvature(wm, t, th);
      if (violation(wm.curvature_class(), relaxed_bound(wm.curvature_class(), 0.0), k) > 1e-6) {
        throw Error(Errc::precondition, "profile is not in class " +
                                            to_string(wm.curvature_class()) + " (K = " +
                                            std::to_string(k) + " at t = " + std::to_string(t) +
                                            ")");
      }
    }
  }
}

SmoothingOptions checked_options(SmoothingOptions opt) {
  if (opt.nt < 16 || opt.ntheta < 1) {
    throw Error(Errc::invalid_argument, "smoothing grid needs nt >= 16 and ntheta >= 1");
  }
  return opt;
}

}  // namespace

CurvatureClass parse_class(std::string_view text) {
  if (text == "le-1") return CurvatureClass::le_minus_one;
  if (text == "ge-1") return CurvatureClass::ge_minus_one;
  if (text == "le1") return CurvatureClass::le_one;
  throw Error(Errc::invalid_argument, "unknown curvature class '" + std::string(text) + "'");
}

std::string to_string(CurvatureClass c) {
  switch (c) {
    case CurvatureClass::le_minus_one:
      return "le-1";
    case CurvatureClass::ge_minus_one:
      return "ge-1";
    case CurvatureClass::le_one:
      return "le1";
  }
  return "?";
}

double relaxed_bound(CurvatureClass c, double eps) {
  switch (c) {
    case CurvatureClass::le_minus_one:
      return -1.0 + eps;
    case CurvatureClass::ge_minus_one:
      return -1.0 - eps;
    case CurvatureClass::le_one:
      return 1.0 + eps;
  }
  return 0.0;
}

double violation(CurvatureClass c, double bound, double k) {
  return c == CurvatureClass::ge_minus_one ? bound - k : k - bound;
}

std::shared_ptr<const Profile> cosh_profile() { return std::make_shared<CoshProfile>(); }
std::shared_ptr<const Profile> flat_profile() { return std::make_shared<FlatProfile>(); }
std::shared_ptr<const Profile> cos_profile() { return std::make_shared<CosProfile>(); }

std::shared_ptr<const Profile> series_profile(std::vector<double> b, std::vector<double> c,
                                              double ell) {
  return std::make_shared<SeriesProfile>(std::move(b), std::move(c), ell);
}

std::shared_ptr<const Profile> sampled_profile(std::string_view csv, double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw Error(Errc::invalid_argument, "sampled profile needs ell > 0");
  }
  std::map<double, std::map<double, double>> by_theta;  // theta -> t -> f
  std::istringstream in{std::string(csv)};
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double row[3];
    if (!parse_row(line, row)) {
      if (!any && lineno == 1) continue;  // header
      throw Error(Errc::parse, "profile CSV line " + std::to_string(lineno) +
                                   ": expected three numbers t,theta,f");
    }
    any = true;
    if (!std::isfinite(row[0]) || !std::isfinite(row[1]) || !std::isfinite(row[2])) {
      throw Error(Errc::parse, "profile CSV line " + std::to_string(lineno) + ": non-finite value");
    }
    if (row[1] < 0.0 || row[1] >= ell) {
      throw Error(Errc::domain, "profile CSV line " + std::to_string(lineno) +
                                    ": theta outside [0, ell)");
    }
    if (!by_theta[row[1]].emplace(row[0], row[2]).second) {
      throw Error(Errc::parse, "profile CSV line " + std::to_string(lineno) + ": duplicate sample");
    }
  }
  if (by_theta.empty()) throw Error(Errc::parse, "profile CSV has no samples");

  std::vector<double> ts;
  for (const auto& [t, f] : by_theta.begin()->second) ts.push_back(t);
  if (ts.size() < 8) throw Error(Errc::parse, "profile CSV needs at least 8 t samples");
  const double dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  if (std::abs(ts.front()) > 1e-12 || !(dt > 0.0)) {
    throw Error(Errc::parse, "profile CSV t samples must start at 0");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::abs(ts[i] - dt * static_cast<double>(i)) > 1e-9 * std::max(1.0, ts.back())) {
      throw Error(Errc::parse, "profile CSV t samples must be uniformly spaced");
    }
  }
  std::vector<double> thetas;
  std::vector<std::vector<double>> columns;
  for (const auto& [theta, col] : by_theta) {
    if (col.size() != ts.size()) {
      throw Error(Errc::parse, "profile CSV is not a full grid (theta = " + std::to_string(theta) +
                                   ")");
    }
    std::vector<double> values;
    std::size_t i = 0;
    for (const auto& [t, f] : col) {
      if (t != ts[i++]) throw Error(Errc::parse, "profile CSV t samples differ between columns");
      values.push_back(f);
    }
    thetas.push_back(theta);
    columns.push_back(std::move(values));
  }
  return std::make_shared<SampledProfile>(std::move(thetas), dt, std::move(columns), ell);
}

std::shared_ptr<const Profile> sampled_profile_file(const std::string& path, double ell) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open profile file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return sampled_profile(buf.str(), ell);
}

std::shared_ptr<const Profile> profile_by_name(const std::string& name, double ell) {
  if (name == "cosh") return cosh_profile();
  if (name == "flat") return flat_profile();
  if (name == "cos") return cos_profile();
  if (name.rfind("file:", 0) == 0) return sampled_profile_file(name.substr(5), ell);
  throw Error(Errc::invalid_argument, "unknown profile '" + name + "'");
}

WarpedMetric::WarpedMetric(std::shared_ptr<const Profile> profile, double t0, double ell,
                           CurvatureClass cls)
    : profile_(std::move(profile)), t0_(t0), ell_(ell), cls_(cls) {
  if (!profile_) throw Error(Errc::invalid_argument, "missing profile");
  if (!(t0_ > 0.0) || !std::isfinite(t0_)) throw Error(Errc::invalid_argument, "t0 must be > 0");
  if (!(ell_ > 0.0) || !std::isfinite(ell_)) throw Error(Errc::invalid_argument, "ell must be > 0");
  if (!(t0_ < profile_->t_max())) {
    throw Error(Errc::domain, "t0 must be below " + std::to_string(profile_->t_max()) +
                                  " for profile " + profile_->name());
  }
  constexpr int nt = 256, nth = 64;
  for (int j = 0; j < nth; ++j) {
    const double th = ell_ * j / nth;
    if (std::abs(profile_->f(0.0, th) - 1.0) > kBoundaryTolerance ||
        std::abs(profile_->f_t(0.0, th)) > kBoundaryTolerance) {
      throw Error(Errc::invalid_argument,
                  "boundary is not geodesic: need f(0,theta) = 1 and f_t(0,theta) = 0");
    }
    for (int i = 0; i < nt; ++i) {
      if (!(profile_->f(t0_ * i / nt, th) > 0.0)) {
        throw Error(Errc::domain, "profile must be positive on the collar");
      }
    }
  }
}

void WarpedMetric::check_domain(double t, double theta) const {
  if (!(t >= 0.0 && t < t0_) || !(theta >= 0.0 && theta < ell_)) {
    throw Error(Errc::domain, "point (" + std::to_string(t) + ", " + std::to_string(theta) +
                                  ") is outside the collar");
  }
}

double curvature(const WarpedMetric& wm, double t, double theta) {
  wm.check_domain(t, theta);
  const Profile& pr = wm.profile();
  if (pr.closed_form()) return -pr.f_tt(t, theta) / pr.f(t, theta);
  const double h = std::min(1e-3 * wm.t0(), (pr.t_max() - t) / 2.0);
  if (h < 1e-6) return -pr.f_tt(t, theta) / pr.f(t, theta);
  const auto g = [&](double s) { return pr.f(std::abs(s), theta); };
  return -second_difference(g, t, h) / pr.f(t, theta);
}

double TaylorProfile::operator()(double t, double theta) const {
  return 1.0 + t * t / 2.0 * second(theta);
}

double transition(double u, int order) {
  if (order < 0 || order > 2) throw Error(Errc::invalid_argument, "transition order must be 0..2");
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return order == 0 ? 1.0 : 0.0;
  // h = 1/(1 + exp(g)), g = 1/u - 1/(1-u).
  const double g = 1.0 / u - 1.0 / (1.0 - u);
  const double eg = std::exp(-std::abs(g));
  const double h = g > 0 ? eg / (1.0 + eg) : 1.0 / (1.0 + eg);
  const double one_minus_h = g > 0 ? 1.0 / (1.0 + eg) : eg / (1.0 + eg);
  if (order == 0) return h;
  const double v = 1.0 - u;
  const double q = 1.0 / (u * u) + 1.0 / (v * v);
  const double hp = h * one_minus_h * q;
  if (order == 1) return hp;
  const double qp = -2.0 / (u * u * u) + 2.0 / (v * v * v);
  return hp * (one_minus_h - h) * q + h * one_minus_h * qp;
}

Bump::Bump(double delta, double t0) : delta_(delta), t0_(t0), a_(delta * t0 / 4.0) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw Error(Errc::invalid_argument, "bump needs t0 > 0");
  if (!(delta > 0.0 && delta < t0)) {
    throw Error(Errc::invalid_argument, "bump needs 0 < delta < t0");
  }
  // Sup norms of h' and h'' by a grid scan refined with golden sections.
  const auto sup_abs = [](int order) {
    constexpr int n = 20000;
    double best = 0.0;
    int arg = 0;
    for (int i = 1; i < n; ++i) {
      const double v = std::abs(transition(static_cast<double>(i) / n, order));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    double lo = static_cast<double>(arg - 1) / n, hi = static_cast<double>(arg + 1) / n;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
      const double m1 = hi - r * (hi - lo), m2 = lo + r * (hi - lo);
      if (std::abs(transition(m1, order)) < std::abs(transition(m2, order))) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    return std::max(best, std::abs(transition((lo + hi) / 2.0, order)));
  };
  const double s = t0 / 4.0;  // width of the unscaled transition
  psi_d1_norm_ = sup_abs(1) / s;
  psi_d2_norm_ = sup_abs(2) / (s * s);
}

double Bump::value(double t) const {
  if (t <= a_) return 0.0;
  if (t >= 2.0 * a_) return 1.0;
  return transition((t - a_) / a_, 0);
}

double Bump::d1(double t) const {
  if (t <= a_ || t >= 2.0 * a_) return 0.0;
  return transition((t - a_) / a_, 1) / a_;
}

double Bump::d2(double t) const {
  if (t <= a_ || t >= 2.0 * a_) return 0.0;
  return transition((t - a_) / a_, 2) / (a_ * a_);
}

SmoothedMetric::SmoothedMetric(const WarpedMetric& wm, double epsilon, SmoothingOptions opt)
    : wm_(wm),
      opt_(checked_options(opt)),
      epsilon_(epsilon),
      M_(sup_f_ttt(wm, opt_)),
      A_(half_second_at_zero(wm, opt_)),
      bump_(select_delta(epsilon, wm.t0(), M_, A_).delta, wm.t0()),
      taylor_(wm) {
  N_ = select_delta(epsilon, wm.t0(), M_, A_).N;
}

double SmoothedMetric::F(double t, double theta) const {
  const double psi = bump_.value(t);
  if (psi == 1.0) return f(t, theta);
  const double pv = p(t, theta);
  if (psi == 0.0) return pv;
  return pv + psi * (f(t, theta) - pv);
}

double SmoothedMetric::F_tt(double t, double theta) const {
  const Profile& pr = wm_.profile();
  const double psi = bump_.value(t);
  if (psi == 1.0) return pr.f_tt(t, theta);
  const double ptt = taylor_.second(theta);
  if (psi == 0.0) return ptt;
  const double gap = pr.f(t, theta) - p(t, theta);
  const double gap_t = pr.f_t(t, theta) - t * ptt;
  const double gap_tt = pr.f_tt(t, theta) - ptt;
  return ptt + bump_.d2(t) * gap + 2.0 * bump_.d1(t) * gap_t + psi * gap_tt;
}

SmoothedMetric smooth_metric(const WarpedMetric& wm, double epsilon, SmoothingOptions opt) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::invalid_argument, "epsilon must be > 0");
  }
  precheck_class(wm);
  return SmoothedMetric(wm, epsilon, opt);
}

EvennessReport evenness_check(const std::function<double(double)>& F, double window, int orders) {
  if (orders < 1) throw Error(Errc::invalid_argument, "evenness check needs orders >= 1");
  if (!(window > 0.0)) throw Error(Errc::invalid_argument, "evenness window must be > 0");
  const int degree = orders % 2 == 1 ? orders + 1 : orders;
  constexpr int samples = 129;
  Eigen::MatrixXd V(samples, degree + 1);
  Eigen::VectorXd y(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / (samples - 1);
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j) {
      V(k, j) = pw;
      pw *= s;
    }
    y(k) = F(s * window);
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  EvennessReport r;
  r.orders = orders;
  r.window = window;
  r.residual = (V * c - y).cwiseAbs().maxCoeff();
  bool ok = r.residual <= r.tolerance;
  for (int j = 1; j <= orders; j += 2) {
    r.odd_coefficients.push_back(c(j));
    ok = ok && std::abs(c(j)) <= r.tolerance;
  }
  r.passes = ok;
  return r;
}

EvennessReport double_evenness_check(const SmoothedMetric& sm, int orders) {
  constexpr int nth = 8;
  EvennessReport worst;
  double worst_score = -1.0;
  for (int j = 0; j < nth; ++j) {
    const double th = sm.metric().ell() * j / nth;
    auto r = evenness_check([&](double t) { return sm.F(t, th); }, sm.bump().zone_start(), orders);
    double score = r.residual;
    for (double c : r.odd_coefficients) score = std::max(score, std::abs(c));
    if (score > worst_score) {
      worst_score = score;
      worst = std::move(r);
    }
  }
  return worst;
}

namespace {

struct GridPart {
  double start;
  double spacing;
  int count;
};

std::vector<GridPart> certificate_grid(const SmoothedMetric& sm) {
  const int nd = sm.options().nt / 2;
  const int nr = sm.options().nt - nd;
  const double zone = sm.bump().zone_end();
  const double rest = sm.metric().t0() - zone;
  return {{0.0, zone / nd, nd}, {zone, rest / (nr + 2), nr}};
}

}  // namespace

CurvatureCertificate certify_curvature(const SmoothedMetric& sm) {
  const WarpedMetric& wm = sm.metric();
  const auto parts = certificate_grid(sm);
  const int nth = sm.options().ntheta;
  const double a = sm.bump().zone_start();

  // sup|F''''|: in the zone F - p carries all of it (p is quadratic) and is
  // small enough to difference without cancellation; beyond, F = f.
  double d4 = 0.0, fmax = 0.0, fmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nth; ++j) {
    const double th = wm.ell() * j / nth;
    const auto excess = [&](double s) {
      s = std::abs(s);
      return sm.F(s, th) - sm.p(s, th);
    };
    const auto Fe = [&](double s) { return sm.F(std::abs(s), th); };
    const GridPart& z = parts[0];
    for (int i = 0; i < z.count; ++i) {
      const double t = z.start + z.spacing * i;
      d4 = std::max(d4, std::abs(fourth_difference(excess, t, a / 32.0)));
    }
    const GridPart& r = parts[1];
    for (int i = 0; i < r.count; ++i) {
      const double t = r.start + r.spacing * i;
      d4 = std::max(d4, std::abs(fourth_difference(Fe, t, r.spacing)));
      const double v = sm.F(t, th);
      fmax = std::max(fmax, v);
      fmin = std::min(fmin, v);
    }
    for (int i = 0; i < z.count; ++i) {
      const double v = sm.F(z.start + z.spacing * i, th);
      fmax = std::max(fmax, v);
      fmin = std::min(fmin, v);
    }
  }
  if (!std::isfinite(d4)) throw Error(Errc::domain, "fourth derivative estimate is not finite");

  CurvatureCertificate cert;
  cert.cls = wm.curvature_class();
  cert.bound = relaxed_bound(cert.cls, sm.epsilon());
  cert.nt = sm.options().nt;
  cert.ntheta = nth;
  cert.worst_violation = -std::numeric_limits<double>::infinity();
  const double rounding = 8.0 * DBL_EPSILON * fmax;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const GridPart& part = parts[k];
    // Step balancing truncation and rounding, capped by the part geometry.
    const double cap = k == 0 ? a / 4.0 : part.spacing;
    double h = d4 > 0.0 ? std::pow(rounding / (10.0 * d4), 0.25) : cap;
    h = std::min(h, cap);
    const double budget = (10.0 * h * h * d4 + rounding / (h * h)) / fmin;
    cert.fd_budget = std::max(cert.fd_budget, budget);
    for (int j = 0; j < nth; ++j) {
      const double th = wm.ell() * j / nth;
      const auto Fe = [&](double s) { return sm.F(std::abs(s), th); };
      for (int i = 0; i < part.count; ++i) {
        const double t = part.start + part.spacing * i;
        const double K = -second_difference(Fe, t, h) / sm.F(t, th);
        cert.worst_violation = std::max(cert.worst_violation, violation(cert.cls, cert.bound, K));
      }
    }
  }
  cert.verdict = cert.worst_violation + cert.fd_budget <= 0.0;
  return cert;
}

SmoothingCertificate certify(const SmoothedMetric& sm) {
  const WarpedMetric& wm = sm.metric();
  const auto parts = certificate_grid(sm);
  const int nth = sm.options().ntheta;
  SmoothingCertificate c;
  c.delta = sm.delta();
  c.M = sm.M();
  c.N = sm.N();
  c.epsilon = sm.epsilon();

  c.evenness = double_evenness_check(sm, 5);
  c.verdict_i = c.evenness.passes;

  c.curvature = certify_curvature(sm);
  c.worst_curvature_violation = c.curvature.worst_violation;
  c.fd_budget = c.curvature.fd_budget;
  c.verdict_ii = c.curvature.verdict;

  bool exact = true;
  double gap = 0.0, distortion = 0.0, gap_fp = 0.0, gap_tt = 0.0;
  double fmin_zone = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nth; ++j) {
    const double th = wm.ell() * j / nth;
    for (const GridPart& part : parts) {
      for (int i = 0; i < part.count; ++i) {
        const double t = part.start + part.spacing * i;
        const double F = sm.F(t, th);
        const double f = sm.f(t, th);
        if (t >= sm.bump().zone_end() && F != f) exact = false;
        gap = std::max(gap, std::abs(F - f));
        distortion = std::max(distortion, std::abs(F * F / (f * f) - 1.0));
        gap_tt = std::max(gap_tt, std::abs(sm.F_tt(t, th) - wm.profile().f_tt(t, th)));
        if (t < sm.bump().zone_end()) {
          gap_fp = std::max(gap_fp, std::abs(f - sm.p(t, th)));
          fmin_zone = std::min(fmin_zone, F);
        }
      }
    }
  }
  c.verdict_iii = exact;
  c.sup_profile_gap = gap;
  c.gap_bound = c.M * c.delta * c.delta * c.delta;
  c.metric_distortion = distortion;
  c.verdict_iv = gap <= c.gap_bound && c.gap_bound <= c.epsilon && distortion <= c.epsilon;

  c.chain.gap_F_f = gap;
  c.chain.gap_f_p = gap_fp;
  c.chain.gap_tt = gap_tt;
  c.chain.gap_tt_bound = 4.0 * c.M * c.delta;
  c.chain.F_min_zone = fmin_zone;
  c.chain.F_lower = 1.0 - c.N * c.delta * c.delta;
  c.chain.holds = gap <= gap_fp && gap_tt <= c.chain.gap_tt_bound &&
                  fmin_zone >= c.chain.F_lower && c.chain.F_lower >= 0.5;
  return c;
}

}  // namespace injrad::warped

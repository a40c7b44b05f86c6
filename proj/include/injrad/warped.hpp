#pragma once

// Warped-product collars dt^2 + f(t, theta)^2 dtheta^2 along a geodesic
// boundary and their smoothing F = p + psi_delta (f - p), where p is the
// even Taylor profile of f at t = 0.

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace injrad::warped {

enum class CurvatureClass { le_minus_one, ge_minus_one, le_one };

/// Accepts "le-1", "ge-1", "le1".
CurvatureClass parse_class(std::string_view text);
std::string to_string(CurvatureClass c);

/// -1 + eps, -1 - eps or 1 + eps.
double relaxed_bound(CurvatureClass c, double eps);

/// Amount by which K violates the bound; <= 0 means satisfied.
double violation(CurvatureClass c, double bound, double curvature);

/// f and its first three t-derivatives on [0, t_max] x R (periodic in theta).
class Profile {
 public:
  virtual ~Profile() = default;
  virtual std::string name() const = 0;
  virtual bool closed_form() const = 0;
  /// Largest t at which the profile can be evaluated.
  virtual double t_max() const = 0;
  virtual double f(double t, double theta) const = 0;
  virtual double f_t(double t, double theta) const = 0;
  virtual double f_tt(double t, double theta) const = 0;
  virtual double f_ttt(double t, double theta) const = 0;
};

std::shared_ptr<const Profile> cosh_profile();
std::shared_ptr<const Profile> flat_profile();
std::shared_ptr<const Profile> cos_profile();

/// f = 1 + sum_{j >= 2} (b_j + c_j cos(2 pi theta / ell)) t^j; coefficient
/// vectors start at j = 2.
std::shared_ptr<const Profile> series_profile(std::vector<double> b, std::vector<double> c,
                                              double ell);

/// Sampled grid read from CSV rows "t,theta,f" (an optional header line is
/// skipped). The t samples must be uniform and start at 0; each theta
/// column is interpolated by a quintic B-spline of its even extension, and
/// columns are blended linearly (periodically in theta).
std::shared_ptr<const Profile> sampled_profile(std::string_view csv, double ell);
std::shared_ptr<const Profile> sampled_profile_file(const std::string& path, double ell);

/// Resolves "cosh", "flat", "cos" or "file:<path>".
std::shared_ptr<const Profile> profile_by_name(const std::string& name, double ell);

class WarpedMetric {
 public:
  /// Checks f(0,.) = 1, f_t(0,.) = 0 and f > 0 on a grid.
  WarpedMetric(std::shared_ptr<const Profile> profile, double t0, double ell,
               CurvatureClass cls);

  const Profile& profile() const { return *profile_; }
  std::shared_ptr<const Profile> profile_ptr() const { return profile_; }
  double t0() const { return t0_; }
  double ell() const { return ell_; }
  CurvatureClass curvature_class() const { return cls_; }

  /// Throws Errc::domain outside [0, t0) x [0, ell).
  void check_domain(double t, double theta) const;

 private:
  std::shared_ptr<const Profile> profile_;
  double t0_;
  double ell_;
  CurvatureClass cls_;
};

/// K = -f_tt / f. Closed-form profiles use their exact f_tt, sampled ones a
/// 5-point central difference of f.
double curvature(const WarpedMetric& wm, double t, double theta);

/// p(t, theta) = 1 + t^2/2 f_tt(0, theta).
class TaylorProfile {
 public:
  explicit TaylorProfile(const WarpedMetric& wm) : profile_(wm.profile_ptr()) {}
  double operator()(double t, double theta) const;
  double second(double theta) const { return profile_->f_tt(0.0, theta); }

 private:
  std::shared_ptr<const Profile> profile_;
};

/// Smooth plateau psi: 0 on [0, t0/4], 1 on [t0/2, inf), strictly
/// increasing between, and psi_delta(t) = psi(t / delta).
class Bump {
 public:
  Bump(double delta, double t0);

  double delta() const { return delta_; }
  double t0() const { return t0_; }
  /// psi_delta = 0 for t <= zone_start and 1 for t >= zone_end (exactly).
  double zone_start() const { return a_; }
  double zone_end() const { return 2.0 * a_; }

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

  /// Sup norms of psi' and psi'' for the unscaled psi (computed on a grid).
  double psi_d1_norm() const { return psi_d1_norm_; }
  double psi_d2_norm() const { return psi_d2_norm_; }
  /// ||psi'||/delta and ||psi''||/delta^2.
  double d1_bound() const { return psi_d1_norm_ / delta_; }
  double d2_bound() const { return psi_d2_norm_ / (delta_ * delta_); }

 private:
  double delta_;
  double t0_;
  double a_;
  double psi_d1_norm_ = 0.0;
  double psi_d2_norm_ = 0.0;
};

/// Standard transition h(u) = s(u)/(s(u) + s(1 - u)), s(u) = exp(-1/u),
/// clamped to 0 and 1 outside (0, 1); order selects h, h' or h''.
double transition(double u, int order = 0);

struct SmoothingOptions {
  int nt = 2048;
  int ntheta = 64;
};

class SmoothedMetric {
 public:
  SmoothedMetric(const WarpedMetric& wm, double epsilon, SmoothingOptions opt = {});

  const WarpedMetric& metric() const { return wm_; }
  const Bump& bump() const { return bump_; }
  const SmoothingOptions& options() const { return opt_; }
  double epsilon() const { return epsilon_; }
  double delta() const { return bump_.delta(); }
  double M() const { return M_; }
  double N() const { return N_; }
  /// sup over theta of |f_tt(0, theta)| / 2.
  double taylor_half_second() const { return A_; }

  double f(double t, double theta) const { return wm_.profile().f(t, theta); }
  double p(double t, double theta) const { return taylor_(t, theta); }
  /// Returns f itself where psi_delta = 1 and p itself where psi_delta = 0.
  double F(double t, double theta) const;
  /// Analytic F_tt from f, p and psi_delta.
  double F_tt(double t, double theta) const;

 private:
  WarpedMetric wm_;
  SmoothingOptions opt_;
  double epsilon_;
  double M_ = 0.0;
  double N_ = 0.0;
  double A_ = 0.0;
  Bump bump_;
  TaylorProfile taylor_;
};

/// Builds the smoothing (see SmoothedMetric) with delta chosen as
/// min(eps/(10M), sqrt(1/(2N)), eps, t0/2, 1, 2 eps/t0), N = A + M delta.
SmoothedMetric smooth_metric(const WarpedMetric& wm, double epsilon, SmoothingOptions opt = {});

struct EvennessReport {
  int orders = 0;
  double window = 0.0;
  std::vector<double> odd_coefficients;  // normalized, for s^1, s^3, ...
  double residual = 0.0;
  double tolerance = 1e-6;
  bool passes = false;
};

/// Least-squares polynomial fit of F(s w) on s in [0, 1]; passes if every
/// odd coefficient up to `orders` and the fit residual are within 1e-6.
EvennessReport evenness_check(const std::function<double(double)>& F, double window, int orders);

/// Runs evenness_check on [0, delta t0 / 4] for several theta values and
/// reports the worst.
EvennessReport double_evenness_check(const SmoothedMetric& sm, int orders);

struct CurvatureCertificate {
  CurvatureClass cls = CurvatureClass::ge_minus_one;
  double bound = 0.0;
  double worst_violation = 0.0;
  double fd_budget = 0.0;
  int nt = 0;
  int ntheta = 0;
  bool verdict = false;
};

/// K(F) by 5-point differences on a grid dense in the transition zone,
/// with budget 10 h^2 sup|F''''| plus a rounding term.
CurvatureCertificate certify_curvature(const SmoothedMetric& sm);

struct ChainChecks {
  double gap_F_f = 0.0;       // sup |F - f|
  double gap_f_p = 0.0;       // sup |f - p| on the modified zone
  double gap_tt = 0.0;        // sup |F_tt - f_tt|
  double gap_tt_bound = 0.0;  // 4 M delta
  double F_min_zone = 0.0;    // inf F on the modified zone
  double F_lower = 0.0;       // 1 - N delta^2
  bool holds = false;
};

struct SmoothingCertificate {
  double delta = 0.0;
  double M = 0.0;
  double N = 0.0;
  double epsilon = 0.0;
  double worst_curvature_violation = 0.0;
  double sup_profile_gap = 0.0;
  double gap_bound = 0.0;  // M delta^3
  double metric_distortion = 0.0;
  double fd_budget = 0.0;
  EvennessReport evenness;
  CurvatureCertificate curvature;
  ChainChecks chain;
  bool verdict_i = false;
  bool verdict_ii = false;
  bool verdict_iii = false;
  bool verdict_iv = false;
  bool all() const { return verdict_i && verdict_ii && verdict_iii && verdict_iv; }
};

SmoothingCertificate certify(const SmoothedMetric& sm);

}  // namespace injrad::warped

#include "coherence/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coherence {

namespace {

void check_config(const OracleConfig& cfg) {
  if (cfg.grid_resolution < 8)
    throw std::invalid_argument("OracleConfig: grid_resolution must be at least 8");
  if (!(cfg.target_tolerance > 0.0) || cfg.target_tolerance > 0.1)
    throw std::invalid_argument("OracleConfig: target_tolerance must be in (0, 0.1]");
}

// Extremal probability scale at which one of the column norms saturates.
double extremal_scale(double rz, double t) {
  const double c2 = std::cos(t) * std::cos(t);
  const double s2 = std::sin(t) * std::sin(t);
  double p = 1.0;
  bool bound = false;
  if (c2 > 1e-300) {
    p = (1.0 + rz) / (2.0 * c2);
    bound = true;
  }
  if (s2 > 1e-300) {
    const double q = (1.0 - rz) / (2.0 * s2);
    p = bound ? std::min(p, q) : q;
  }
  return p;
}

struct GridPoint {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  double la2 = 0.0, lb2 = 0.0;
  double p0 = 0.0;        // success probability of the pair at extremal scale
  double x = 0.0, z = 0.0;  // unnormalized transverse and z output components
};

GridPoint eval_point(double rx, double rz, double t, double theta, double phi) {
  GridPoint g;
  g.p0 = extremal_scale(rz, t);
  const double la = std::sqrt(2.0 * g.p0 / (1.0 + rz)) * std::cos(t);
  const double lb = std::sqrt(2.0 * g.p0 / (1.0 - rz)) * std::sin(t);
  g.a1 = la * std::cos(0.5 * (theta - phi));
  g.a2 = la * std::sin(0.5 * (theta - phi));
  g.b1 = lb * std::sin(0.5 * (theta + phi));
  g.b2 = lb * std::cos(0.5 * (theta + phi));
  g.la2 = la * la;
  g.lb2 = lb * lb;
  g.x = rx * (g.a1 * g.b1 + g.a2 * g.b2);
  g.z = 0.5 * ((g.a1 * g.a1 - g.a2 * g.a2) * (1.0 + rz) +
               (g.b2 * g.b2 - g.b1 * g.b1) * (1.0 - rz));
  return g;
}

struct Candidate {
  double p_hat = 0.0;
  double kappa = 1.0;
  double w_plus = 0.0, w_minus = 0.0;
  GridPoint g;
  double t = 0.0, theta = 0.0, phi = 0.0;
  bool valid = false;
};

std::vector<SioKraus> candidate_ops(const Candidate& c, double rz) {
  const double sk = std::sqrt(c.kappa);
  std::vector<SioKraus> ops;
  ops.push_back(SioKraus::diagonal(sk * c.g.a1, sk * c.g.b1));
  ops.push_back(SioKraus::antidiagonal(sk * c.g.b2, sk * c.g.a2));
  const auto tail = destroyer_fill(0.5 * (1.0 + rz), 0.5 * (1.0 - rz),
                                   1.0 - c.kappa * c.g.la2, 1.0 - c.kappa * c.g.lb2,
                                   c.w_plus, c.w_minus);
  ops.insert(ops.end(), tail.begin(), tail.end());
  return ops;
}

}  // namespace

SioInstrument sample_sio_instrument(OracleRng& rng, bool include_destroyers) {
  const int na = include_destroyers ? 3 : 2;
  auto draw_vec = [&](double* v) {
    for (;;) {
      double n2 = 0.0;
      for (int i = 0; i < na; ++i) {
        v[i] = rng.uniform();
        n2 += v[i] * v[i];
      }
      for (int i = na; i < 3; ++i) v[i] = 0.0;
      if (n2 <= 1.0) return;
    }
  };
  double a[3], b[3];
  draw_vec(a);
  draw_vec(b);
  std::vector<SioKraus> success;
  auto push_nonzero = [&](const SioKraus& k) {
    if (k.m.max_abs() > 1e-15) success.push_back(k);
  };
  push_nonzero(SioKraus::diagonal(a[0], b[0]));
  push_nonzero(SioKraus::antidiagonal(b[1], a[1]));
  push_nonzero(SioKraus::destroyer(0, 0, a[2]));
  push_nonzero(SioKraus::destroyer(0, 1, b[2]));
  return complete_instrument(success);
}

double oracle_max_probability(const BlochVector& initial, const BlochVector& target,
                              const OracleConfig& cfg) {
  check_config(cfg);
  if (!initial.valid() || !target.valid())
    throw std::invalid_argument("oracle_max_probability: invalid Bloch vector");

  const double rx = initial.r();
  const double rz = std::abs(initial.rz);
  const double sx = target.r();
  const double sz = std::abs(target.rz);

  const DensityOperator rho = bloch_to_density({rx, 0.0, rz});
  const DensityOperator sig = bloch_to_density({sx, 0.0, sz});

  if (sx <= 1e-12) {
    // Incoherent targets: destroyers alone reach them deterministically.
    const auto ops = destroyer_fill(0.5 * (1.0 + rz), 0.5 * (1.0 - rz), 1.0, 1.0,
                                    0.5 * (1.0 + sz), 0.5 * (1.0 - sz));
    const ComplexMatrix out = apply_kraus_sum(ops, rho);
    const double p = out.trace().real();
    if (trace_distance(DensityOperator(out * cx{1.0 / p, 0.0}), sig) > cfg.target_tolerance)
      throw std::logic_error("oracle: destroyer construction failed");
    return p;
  }
  if (rx <= 1e-12) return 0.0;

  const int n = cfg.grid_resolution;
  const double m_needed = std::sqrt((1.0 - rz) * (1.0 + rz)) * sx / rx;

  auto evaluate = [&](double t, double theta, double phi, Candidate& slot) {
    t = std::clamp(t, 0.0, 0.5 * M_PI);
    theta = std::clamp(theta, 0.0, 0.5 * M_PI);
    phi = std::clamp(phi, -theta, theta);
    const GridPoint g = eval_point(rx, rz, t, theta, phi);
    // Pure pair: does the extremal output itself match?
    if (g.p0 > slot.p_hat) {
      const double dx = g.x / g.p0 - sx;
      const double dz = g.z / g.p0 - sz;
      if (0.5 * std::hypot(dx, dz) <= cfg.target_tolerance) {
        slot = Candidate{g.p0, 1.0, 0.0, 0.0, g, t, theta, phi, true};
      }
    }
    // Destroy-augmented exact match: scale the pair to fix the transverse
    // part, then route the remaining weight onto the incoherent axis.
    if (g.x > 1e-15) {
      const double p_hat = std::min(1.0, g.x / sx);
      if (p_hat > slot.p_hat) {
        const double kappa = p_hat * sx / g.x;
        if (kappa <= 1.0 + 1e-12) {
          double wp = 0.5 * (p_hat * (1.0 + sz) - kappa * (g.p0 + g.z));
          double wm = 0.5 * (p_hat * (1.0 - sz) - kappa * (g.p0 - g.z));
          if (wp >= -1e-13 && wm >= -1e-13) {
            wp = std::max(0.0, wp);
            wm = std::max(0.0, wm);
            slot = Candidate{p_hat, std::min(1.0, kappa), wp, wm, g, t, theta, phi, true};
          }
        }
      }
    }
  };

  // The feasibility cliffs of the augmented match make the landscape
  // multimodal in t; keep the best candidate per t-row as a starting point.
  std::vector<Candidate> starts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * M_PI * i / (n - 1);
    const double s2t = std::sin(2.0 * t);
    Candidate& row = starts[static_cast<size_t>(i)];
    // theta grid, plus the value matching the target transverse exactly.
    std::vector<double> thetas;
    thetas.reserve(n + 1);
    for (int j = 0; j < n; ++j) thetas.push_back(0.5 * M_PI * j / (n - 1));
    if (s2t > 1e-300 && m_needed / s2t <= 1.0) thetas.push_back(std::asin(m_needed / s2t));
    for (double theta : thetas) {
      for (int k = 0; k < n; ++k) {
        const double phi = theta * (-1.0 + 2.0 * k / (n - 1));
        evaluate(t, theta, phi, row);
      }
      // phi at the vertical maximum.
      const double a = std::cos(2.0 * t) * std::sin(theta);
      const double b = std::cos(theta);
      evaluate(t, theta, std::clamp(std::atan2(a, b), -theta, theta), row);
    }
  }

  std::sort(starts.begin(), starts.end(),
            [](const Candidate& a, const Candidate& b) { return a.p_hat > b.p_hat; });
  Candidate best;
  const int n_starts = std::min<int>(16, static_cast<int>(starts.size()));
  for (int s = 0; s < n_starts; ++s) {
    Candidate local = starts[static_cast<size_t>(s)];
    if (!local.valid) continue;
    double width = 0.5 * M_PI / (n - 1);
    for (int round = 0; round < 60; ++round) {
      const Candidate center = local;
      for (int dt = -1; dt <= 1; ++dt)
        for (int dth = -1; dth <= 1; ++dth)
          for (int dph = -1; dph <= 1; ++dph) {
            if (dt == 0 && dth == 0 && dph == 0) continue;
            evaluate(center.t + dt * width, center.theta + dth * width,
                     center.phi + dph * width, local);
          }
      width *= 0.7;
    }
    if (local.valid && local.p_hat > best.p_hat) best = local;
  }

  if (!best.valid) return 0.0;

  // Verify the winning candidate by direct application.
  const auto ops = candidate_ops(best, rz);
  const ComplexMatrix out = apply_kraus_sum(ops, rho);
  const double p = out.trace().real();
  if (std::abs(p - best.p_hat) > 1e-9 ||
      trace_distance(DensityOperator(out * cx{1.0 / p, 0.0}), sig) >
          cfg.target_tolerance + 1e-9)
    throw std::logic_error("oracle: candidate verification failed");
  return best.p_hat;
}

std::vector<ReachablePoint> oracle_reachable_set(const BlochVector& initial, double p,
                                                 const OracleConfig& cfg) {
  check_config(cfg);
  if (!initial.valid()) throw std::invalid_argument("oracle_reachable_set: invalid state");
  if (!(p > 0.0) || p > 1.0 + 1e-12)
    throw std::invalid_argument("oracle_reachable_set: probability must be in (0, 1]");

  const double rx = initial.r();
  const double rz = std::abs(initial.rz);
  const double zsign = initial.rz < 0.0 ? -1.0 : 1.0;
  const DensityOperator rho = bloch_to_density({rx, 0.0, rz});

  std::vector<ReachablePoint> cloud;
  const int n = cfg.grid_resolution;

  if (rx <= 1e-12) {
    // Incoherent initial states: only the z-axis is populated.
    for (int j = 0; j < n; ++j) {
      const double tz = -1.0 + 2.0 * j / (n - 1);
      cloud.push_back({0.0, zsign * tz, 1.0});
    }
    return cloud;
  }

  // t sweeps the window where the extremal scale still reaches p.
  double t_lo = 0.0, t_hi = 0.5 * M_PI;
  if (2.0 * p > 1.0 + rz) t_lo = std::acos(std::sqrt((1.0 + rz) / (2.0 * p)));
  if (2.0 * p > 1.0 - rz) t_hi = std::asin(std::sqrt((1.0 - rz) / (2.0 * p)));
  for (int i = 0; i < n; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (n - 1);
    for (int j = 0; j < 2 * n - 1; ++j) {
      const double theta = M_PI * j / (2 * n - 2);
      const double phi_half = std::min(theta, M_PI - theta);
      for (int k = 0; k < n; ++k) {
        const double phi = phi_half * (-1.0 + 2.0 * k / (n - 1));
        const GridPoint g = eval_point(rx, rz, t, theta, phi);
        if (g.p0 < p - cfg.target_tolerance) continue;
        const double achieved = std::min(g.p0, 1.0);
        cloud.push_back({g.x / g.p0, zsign * g.z / g.p0, achieved});
        // Kraus-operator phases flip the transverse sign at no cost.
        if (g.x > 1e-15) cloud.push_back({-g.x / g.p0, zsign * g.z / g.p0, achieved});
      }
    }
  }

  // Randomized instruments with destroyers fill the interior.
  OracleRng rng(cfg.seed);
  for (int s = 0; s < cfg.random_samples; ++s) {
    const SioInstrument inst = sample_sio_instrument(rng, true);
    const auto branches = apply_instrument(inst, rho);
    const auto& succ = branches.front();
    if (succ.probability < p - cfg.target_tolerance || !succ.state) continue;
    const BlochVector b = density_to_bloch(*succ.state);
    cloud.push_back({b.rx, zsign * b.rz, succ.probability});
  }
  return cloud;
}

}  // namespace coherence

#pragma once

// Property suites run by `dlpq verify` on a single user-supplied element.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dlpq/dlpq.hpp"

namespace dlpq::cli {

struct Check {
  enum class Status { Pass, Fail, Skip, Info };
  std::string suite;
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

inline const char *status_name(Check::Status s) {
  switch (s) {
  case Check::Status::Pass: return "PASS";
  case Check::Status::Fail: return "FAIL";
  case Check::Status::Skip: return "SKIP";
  case Check::Status::Info: return "INFO";
  }
  return "FAIL";
}

inline bool all_passed(const std::vector<Check> &checks) {
  for (const auto &c : checks)
    if (c.status == Check::Status::Fail)
      return false;
  return true;
}

inline std::string checks_to_text(const std::vector<Check> &checks) {
  std::string out;
  for (const auto &c : checks) {
    if (!out.empty())
      out += '\n';
    out += std::string(status_name(c.status)) + " " + c.suite + "/" + c.name;
    if (!c.detail.empty())
      out += ": " + c.detail;
  }
  return out;
}

inline json checks_to_json(const std::vector<Check> &checks) {
  json arr = json::array();
  for (const auto &c : checks)
    arr.push_back({{"suite", c.suite},
                   {"property", c.name},
                   {"status", status_name(c.status)},
                   {"detail", c.detail}});
  return json{{"passed", all_passed(checks)}, {"checks", std::move(arr)}};
}

namespace detail {

class SuiteRunner {
public:
  SuiteRunner(std::vector<Check> &out, std::string suite) : out_(out), suite_(std::move(suite)) {}

  void check(const std::string &name, const std::function<bool()> &fn) {
    Check c{suite_, name};
    try {
      c.status = fn() ? Check::Status::Pass : Check::Status::Fail;
    } catch (const std::exception &e) {
      c.status = Check::Status::Fail;
      c.detail = e.what();
    }
    out_.push_back(std::move(c));
  }

  void skip(const std::string &name, const std::string &why) {
    out_.push_back({suite_, name, Check::Status::Skip, why});
  }

  void info(const std::string &name, const std::string &detail) {
    out_.push_back({suite_, name, Check::Status::Info, detail});
  }

private:
  std::vector<Check> &out_;
  std::string suite_;
};

// Masks exercised by the all-masks properties: every mask while that stays
// cheap, otherwise the single generators plus the empty and full masks.
inline std::vector<ConjMask> probe_masks(const Signature &sig) {
  std::vector<ConjMask> masks;
  if (sig.n() <= 6) {
    for (BladeMask m = 0; m < sig.dim(); ++m)
      masks.emplace_back(m);
    return masks;
  }
  masks.emplace_back(0);
  for (int g = 0; g < sig.n(); ++g)
    masks.emplace_back(BladeMask{1} << g);
  masks.emplace_back(static_cast<BladeMask>(sig.dim() - 1));
  return masks;
}

template <Scalar S> bool close(const S &a, const S &b) { return scalar_close(a, b, 1e-9); }

template <Scalar S> bool is_one(const Element<S> &v) {
  return approx_equal(v, Element<S>::one(v.signature()), 1e-9);
}

// psi(x) == 0, with the float residue measured against sum_k |c_k| (N ||x||)^k,
// a bound on the size of the terms that cancel.
template <Scalar S> bool annihilates(const CharPoly<S> &psi, const Element<S> &x) {
  const auto value = psi.evaluate(x);
  if constexpr (ScalarTraits<S>::exact) {
    return value.is_zero();
  } else {
    const double base = static_cast<double>(x.size()) * x.max_norm();
    double log_scale = -745.0;
    for (std::size_t k = 0; k < psi.coeffs().size(); ++k) {
      const double mag = std::fabs(psi[k]);
      if (mag == 0.0)
        continue;
      const double term = std::log(mag) + static_cast<double>(k) * std::log(std::max(base, 1e-300));
      log_scale = std::max(log_scale, term) + std::log1p(std::exp(-std::fabs(log_scale - term)));
    }
    const double residue = value.max_norm();
    return residue == 0.0 || std::log(residue) <= std::log(1e-9) + log_scale;
  }
}

template <Scalar S> void conjugation_suite(const Element<S> &u, std::vector<Check> &out) {
  SuiteRunner r(out, "conjugation");
  const Signature sig = u.signature();
  const auto masks = probe_masks(sig);
  const auto v = u * u + Element<S>::one(sig);
  const S s = ScalarTraits<S>::from_int(2);
  const S t = ScalarTraits<S>::from_int(-3);

  r.check("identity", [&] { return conjugate(u, ConjMask(0)) == u; });
  r.check("involution", [&] {
    for (auto c : masks)
      if (!(conjugate(conjugate(u, c), c) == u))
        return false;
    return true;
  });
  r.check("linearity", [&] {
    for (auto c : masks)
      if (!approx_equal(conjugate(u * s + v * t, c), conjugate(u, c) * s + conjugate(v, c) * t))
        return false;
    return true;
  });
  r.check("commuting", [&] {
    for (auto a : masks)
      for (auto b : masks) {
        const auto ab = conjugate(conjugate(u, a), b);
        if (!(ab == conjugate(conjugate(u, b), a)) || !(ab == conjugate(u, a ^ b)))
          return false;
      }
    return true;
  });
  r.check("multiplicativity", [&] {
    const auto uv = u * v;
    for (auto c : masks)
      if (!approx_equal(conjugate(uv, c), conjugate(u, c) * conjugate(v, c)))
        return false;
    return true;
  });
  r.check("elimination", [&] {
    for (int k = 1; k <= sig.n(); ++k) {
      const auto w = eliminate_generator(u, k);
      const double scale = std::max(w.max_norm(), u.max_norm() * u.max_norm());
      for (BladeMask m = 0; m < w.size(); ++m)
        if ((m >> (k - 1)) & 1U) {
          if constexpr (ScalarTraits<S>::exact) {
            if (!ScalarTraits<S>::is_zero(w[m]))
              return false;
          } else if (std::fabs(w[m]) > 1e-12 * scale) {
            return false;
          }
        }
    }
    return true;
  });
}

template <Scalar S> void det_suite(const Element<S> &u, std::vector<Check> &out) {
  SuiteRunner r(out, "det");
  const Signature sig = u.signature();
  const int n = sig.n();
  const S det = det_recursive(u);
  r.info("det", ScalarTraits<S>::to_string(det));

  if (n <= 8)
    r.check("matrix_oracle", [&] { return close(det, oracle_det(u)); });
  else
    r.skip("matrix_oracle", "n > 8");
  if (n <= 8)
    r.check("full_product", [&] { return close(det, det_full_product(u)); });
  else
    r.skip("full_product", "n > 8");
  if (n <= 7)
    r.check("faddeev_leverrier", [&] { return close(det, charpoly_fl(u).det); });
  else
    r.skip("faddeev_leverrier", "n > 7");
  r.check("conjugate_invariance", [&] {
    for (auto c : probe_masks(sig))
      if (!close(det, det_recursive(conjugate(u, c))))
        return false;
    return true;
  });
  r.check("multiplicativity", [&] {
    const auto v = u + Element<S>::one(sig);
    return close(det_recursive(u * v), S(det * det_recursive(v)));
  });
  r.check("trace", [&] {
    const S tr = trace(u);
    const auto by_conj = trace_by_conjugates(u);
    if (!approx_equal(by_conj, Element<S>::scalar(sig, tr)))
      return false;
    return n > 10 || scalar_close(tr, oracle_trace(u), 1e-12);
  });
}

template <Scalar S> void charpoly_suite(const Element<S> &u, std::vector<Check> &out) {
  SuiteRunner r(out, "charpoly");
  const Signature sig = u.signature();
  if (sig.n() > 5) {
    r.skip("all", "n > 5");
    return;
  }
  const auto psi = charpoly_symmetric(u);
  const std::size_t big_n = u.size();
  r.info("psi", psi.to_string());
  r.check("matrix_oracle", [&] { return approx_equal(psi, oracle_charpoly(u)); });
  r.check("faddeev_leverrier", [&] { return approx_equal(psi, charpoly_fl(u).charpoly); });
  r.check("leading_coefficient", [&] { return psi[big_n] == ScalarTraits<S>::one(); });
  r.check("constant_is_det", [&] { return close(psi[0], det_recursive(u)); });
  r.check("next_to_leading_is_minus_trace", [&] { return close(psi[big_n - 1], S(-trace(u))); });
  r.check("cayley_hamilton", [&] {
    for (auto c : probe_masks(sig))
      if (!annihilates(psi, conjugate(u, c)))
        return false;
    return true;
  });
  r.check("conjugate_invariance", [&] {
    for (auto c : probe_masks(sig))
      if (!approx_equal(psi, charpoly_symmetric(conjugate(u, c))))
        return false;
    return true;
  });
}

template <Scalar S>
void inverse_suite(const Element<S> &u, const Tolerance &tol, std::vector<Check> &out) {
  SuiteRunner r(out, "inverse");
  const Signature sig = u.signature();
  std::optional<Element<S>> inv;
  try {
    inv = inverse(u, tol);
  } catch (const NotInvertibleError &e) {
    r.info("branch", "NOT_INVERTIBLE branch taken (det = " + e.det_text() + ")");
    r.check("is_zero_divisor", [&] { return u.is_zero() || is_zero_divisor(u, tol); });
    if (u.is_zero()) {
      r.info("witness", "zero element; conventional witness 1");
      return;
    }
    r.check("witness_annihilates", [&] {
      const auto report = classify(u, tol);
      return !report.is_unit && report.witness && is_verified_witness(u, *report.witness, tol);
    });
    return;
  }

  r.info("branch", "invertible");
  r.check("round_trip", [&] { return is_one(u * *inv); });
  r.check("inverse_of_conjugate", [&] {
    for (auto c : probe_masks(sig))
      if (!inverse_of_conjugate_check(u, c, tol))
        return false;
    return true;
  });
  const auto adj = adjoint_by_elimination(u);
  r.check("adjoint_identity", [&] {
    return approx_equal(u * adj, Element<S>::scalar(sig, det_recursive(u)));
  });
  r.check("adjoint_equivariance", [&] {
    for (auto c : probe_masks(sig))
      if (!approx_equal(adjoint_by_elimination(conjugate(u, c)), conjugate(adj, c)))
        return false;
    return true;
  });
  if (sig.n() <= 6) {
    r.check("adjoint_full_product", [&] { return approx_equal(adj, adjoint(u)); });
    r.check("adjoint_faddeev_leverrier", [&] { return approx_equal(adj, charpoly_fl(u).adjoint); });
  } else {
    r.skip("adjoint_full_product", "n > 6");
    r.skip("adjoint_faddeev_leverrier", "n > 6");
  }
}

} // namespace detail

template <Scalar S>
std::vector<Check> run_suite(const Element<S> &u, const std::string &suite, const Tolerance &tol = {}) {
  std::vector<Check> out;
  const bool all = suite == "all";
  if (all || suite == "conjugation")
    detail::conjugation_suite(u, out);
  if (all || suite == "det")
    detail::det_suite(u, out);
  if (all || suite == "charpoly")
    detail::charpoly_suite(u, out);
  if (all || suite == "inverse")
    detail::inverse_suite(u, tol, out);
  return out;
}

} // namespace dlpq::cli

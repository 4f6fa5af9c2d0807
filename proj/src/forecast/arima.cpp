// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chainpulse/forecast/arima.hpp"

#include "chainpulse/explore/acf.hpp"
#include "chainpulse/util/error.hpp"
#include "chainpulse/util/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace chainpulse::forecast {

namespace {

std::vector<double> difference(std::vector<double> v, int d) {
    for (int round = 0; round < d; ++round) {
        if (v.size() < 2) {
            throw Error("short-series", "series too short to difference");
        }
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            v[i] = v[i + 1] - v[i];
        }
        v.pop_back();
    }
    return v;
}

// CSS problem over parameters c = [mu, beta..., phi..., theta...].
// The series entering the ARMA recursion is
//   z_t = w_t - mu - sum_k beta_k u_{k,t}
// where w is the differenced response and u_k the differenced exogenous
// columns, so mu and beta act through constant design columns. Exogenous
// row t must already be lagged: it holds what is known before step t.
class CssProblem {
public:
    CssProblem(std::span<const double> series, const ExogMatrix* exog, int p, int d, int q)
        : p_(p), q_(q) {
        if (exog != nullptr) {
            exog->validate();
            // One trailing forecast row beyond the series is tolerated.
            if (exog->rows() != series.size() && exog->rows() != series.size() + 1) {
                throw Error("length-mismatch",
                            "exogenous rows must match the series length");
            }
        }
        if (series.size() < static_cast<std::size_t>(d) + 2) {
            throw Error("short-series", "series too short for the requested orders");
        }
        w_ = difference(std::vector<double>(series.begin(), series.end()), d);
        m_ = w_.size();
        start_ = static_cast<std::size_t>(std::max(p, q));
        if (m_ <= start_ + 1) {
            throw Error("short-series", "series too short for the requested orders");
        }
        design_.push_back(std::vector<double>(m_, 1.0));
        if (exog != nullptr) {
            for (const auto& col : exog->cols) {
                std::vector<double> trimmed(col.begin(),
                                            col.begin() + static_cast<std::ptrdiff_t>(series.size()));
                design_.push_back(difference(std::move(trimmed), d));
            }
        }
        n_linear_ = design_.size();
    }

    std::size_t n_params() const { return n_linear_ + static_cast<std::size_t>(p_ + q_); }
    std::size_t n_scored() const { return m_ - start_; }
    std::size_t n_linear() const { return n_linear_; }
    const std::vector<double>& response() const { return w_; }
    const std::vector<std::vector<double>>& design() const { return design_; }
    std::size_t start() const { return start_; }

    std::vector<double> z_of(std::span<const double> c) const {
        std::vector<double> z(w_);
        for (std::size_t k = 0; k < n_linear_; ++k) {
            const double coef = c[k];
            if (coef == 0.0) {
                continue;
            }
            for (std::size_t t = 0; t < m_; ++t) {
                z[t] -= coef * design_[k][t];
            }
        }
        return z;
    }

    // Innovations for all t (zero before `start_`).
    std::vector<double> innovations(std::span<const double> c) const {
        const auto z = z_of(c);
        const double* phi = c.data() + n_linear_;
        const double* theta = phi + p_;
        std::vector<double> eps(m_, 0.0);
        for (std::size_t t = start_; t < m_; ++t) {
            double e = z[t];
            for (int i = 1; i <= p_; ++i) {
                e -= phi[i - 1] * z[t - static_cast<std::size_t>(i)];
            }
            for (int j = 1; j <= q_; ++j) {
                e -= theta[j - 1] * eps[t - static_cast<std::size_t>(j)];
            }
            eps[t] = e;
        }
        return eps;
    }

    double sse(std::span<const double> c) const {
        const auto eps = innovations(c);
        double acc = 0.0;
        for (std::size_t t = start_; t < m_; ++t) {
            acc += eps[t] * eps[t];
        }
        return acc;
    }

    // Residuals (scored innovations) and the analytic Jacobian
    // d eps_t / d c, rows t = start..m-1.
    void residuals_and_jacobian(std::span<const double> c, std::vector<double>& r,
                                Matrix& jac) const {
        const auto z = z_of(c);
        const double* phi = c.data() + n_linear_;
        const double* theta = phi + p_;
        const std::size_t np = n_params();
        std::vector<double> eps(m_, 0.0);
        Matrix deps(m_, np, 0.0); // d eps_t / d c, all t
        for (std::size_t t = start_; t < m_; ++t) {
            double e = z[t];
            for (int i = 1; i <= p_; ++i) {
                e -= phi[i - 1] * z[t - static_cast<std::size_t>(i)];
            }
            for (int j = 1; j <= q_; ++j) {
                e -= theta[j - 1] * eps[t - static_cast<std::size_t>(j)];
            }
            eps[t] = e;
            auto row = deps.row(t);
            // Linear parameters (mu, beta) act through their design column.
            for (std::size_t k = 0; k < n_linear_; ++k) {
                double g = -design_[k][t];
                for (int i = 1; i <= p_; ++i) {
                    g += phi[i - 1] * design_[k][t - static_cast<std::size_t>(i)];
                }
                for (int j = 1; j <= q_; ++j) {
                    g -= theta[j - 1] * deps.at(t - static_cast<std::size_t>(j), k);
                }
                row[k] = g;
            }
            for (int i = 1; i <= p_; ++i) {
                double g = -z[t - static_cast<std::size_t>(i)];
                for (int j = 1; j <= q_; ++j) {
                    g -= theta[j - 1] * deps.at(t - static_cast<std::size_t>(j),
                                                n_linear_ + static_cast<std::size_t>(i) - 1);
                }
                row[n_linear_ + static_cast<std::size_t>(i) - 1] = g;
            }
            for (int j = 1; j <= q_; ++j) {
                const std::size_t col = n_linear_ + static_cast<std::size_t>(p_ + j) - 1;
                double g = -eps[t - static_cast<std::size_t>(j)];
                for (int k = 1; k <= q_; ++k) {
                    g -= theta[k - 1] * deps.at(t - static_cast<std::size_t>(k), col);
                }
                row[col] = g;
            }
        }
        r.assign(eps.begin() + static_cast<std::ptrdiff_t>(start_), eps.end());
        jac = Matrix(n_scored(), np);
        for (std::size_t t = start_; t < m_; ++t) {
            auto src = deps.row(t);
            auto dst = jac.row(t - start_);
            std::copy(src.begin(), src.end(), dst.begin());
        }
    }

private:
    int p_ = 0, q_ = 0;
    std::size_t m_ = 0;
    std::size_t start_ = 0;
    std::size_t n_linear_ = 0;
    std::vector<double> w_;
    std::vector<std::vector<double>> design_;
};

// Ordinary least squares with a tiny ridge fallback; sets `rank_warning`
// when the normal equations are numerically rank deficient.
std::vector<double> ols(const std::vector<std::vector<double>>& cols,
                        std::span<const double> y, std::size_t t0, bool* rank_warning) {
    const std::size_t k = cols.size();
    Matrix gram(k, k);
    std::vector<double> rhs(k, 0.0);
    const std::size_t n = y.size();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            double acc = 0.0;
            for (std::size_t t = t0; t < n; ++t) {
                acc += cols[a][t] * cols[b][t];
            }
            gram.at(a, b) = acc;
            gram.at(b, a) = acc;
        }
        double acc = 0.0;
        for (std::size_t t = t0; t < n; ++t) {
            acc += cols[a][t] * y[t];
        }
        rhs[a] = acc;
    }
    try {
        return solve_linear(gram, rhs);
    } catch (const Error&) {
        if (rank_warning != nullptr) {
            *rank_warning = true;
        }
        double scale = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            scale = std::max(scale, gram.at(a, a));
        }
        const double ridge = std::max(scale, 1.0) * 1e-10;
        for (std::size_t a = 0; a < k; ++a) {
            gram.at(a, a) += ridge;
        }
        return solve_linear(gram, rhs);
    }
}

// Hannan-Rissanen style starting point: regress out the linear part, fit a
// long AR for innovation estimates, then one OLS pass for (phi, theta).
std::vector<double> initial_parameters(const CssProblem& problem, int p, int q,
                                       bool* rank_warning) {
    const auto& w = problem.response();
    const auto& design = problem.design();
    const std::size_t m = w.size();
    const std::size_t n_linear = problem.n_linear();

    std::vector<double> c(problem.n_params(), 0.0);
    const auto linear = ols(design, w, 0, rank_warning);
    for (std::size_t k = 0; k < n_linear; ++k) {
        c[k] = linear[k];
    }
    if (p + q == 0) {
        return c;
    }

    std::vector<double> z(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        double acc = w[t];
        for (std::size_t k = 0; k < n_linear; ++k) {
            acc -= linear[k] * design[k][t];
        }
        z[t] = acc;
    }

    // Innovation proxies from a long autoregression (only needed for q > 0).
    std::vector<double> eps_hat(m, 0.0);
    if (q > 0) {
        const auto lmax = static_cast<std::size_t>(std::max(20, 2 * (p + q)));
        const std::size_t lfit = std::min(lmax, m / 4);
        if (lfit >= 1) {
            std::vector<std::vector<double>> lag_cols(lfit, std::vector<double>(m, 0.0));
            for (std::size_t l = 1; l <= lfit; ++l) {
                for (std::size_t t = l; t < m; ++t) {
                    lag_cols[l - 1][t] = z[t - l];
                }
            }
            const auto a = ols(lag_cols, z, lfit, nullptr);
            for (std::size_t t = lfit; t < m; ++t) {
                double e = z[t];
                for (std::size_t l = 1; l <= lfit; ++l) {
                    e -= a[l - 1] * z[t - l];
                }
                eps_hat[t] = e;
            }
        }
    }

    const auto t0 = static_cast<std::size_t>(std::max(p, q));
    std::vector<std::vector<double>> cols;
    for (int i = 1; i <= p; ++i) {
        std::vector<double> col(m, 0.0);
        for (std::size_t t = t0; t < m; ++t) {
            col[t] = z[t - static_cast<std::size_t>(i)];
        }
        cols.push_back(std::move(col));
    }
    for (int j = 1; j <= q; ++j) {
        std::vector<double> col(m, 0.0);
        for (std::size_t t = t0; t < m; ++t) {
            col[t] = eps_hat[t - static_cast<std::size_t>(j)];
        }
        cols.push_back(std::move(col));
    }
    try {
        const auto coeffs = ols(cols, z, t0, nullptr);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            // Clamp wild starting values; Levenberg-Marquardt refines them.
            c[n_linear + i] = std::clamp(coeffs[i], -0.98, 0.98);
        }
    } catch (const Error&) {
        // Singular starting system: begin from zeros.
    }
    return c;
}

constexpr double kCssTolerance = 1e-8;
constexpr int kCssMaxIterations = 500;

void run_levenberg_marquardt(const CssProblem& problem, std::vector<double>& c,
                             bool& converged) {
    double f = problem.sse(c);
    double lambda = 1e-3;
    converged = false;
    std::vector<double> r;
    Matrix jac;
    for (int iter = 0; iter < kCssMaxIterations; ++iter) {
        problem.residuals_and_jacobian(c, r, jac);
        const std::size_t np = problem.n_params();
        Matrix h(np, np);
        std::vector<double> g(np, 0.0);
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = a; b < np; ++b) {
                double acc = 0.0;
                for (std::size_t t = 0; t < r.size(); ++t) {
                    acc += jac.at(t, a) * jac.at(t, b);
                }
                h.at(a, b) = acc;
                h.at(b, a) = acc;
            }
            double acc = 0.0;
            for (std::size_t t = 0; t < r.size(); ++t) {
                acc += jac.at(t, a) * r[t];
            }
            g[a] = acc;
        }
        bool stepped = false;
        while (lambda <= 1e12) {
            Matrix damped = h;
            for (std::size_t a = 0; a < np; ++a) {
                damped.at(a, a) += lambda * std::max(h.at(a, a), 1e-12);
            }
            std::vector<double> delta;
            try {
                std::vector<double> neg(g);
                for (auto& v : neg) {
                    v = -v;
                }
                delta = solve_linear(damped, std::move(neg));
            } catch (const Error&) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> trial(c);
            for (std::size_t a = 0; a < np; ++a) {
                trial[a] += delta[a];
            }
            const double f_trial = problem.sse(trial);
            if (std::isfinite(f_trial) && f_trial <= f) {
                const double drop = f - f_trial;
                c = std::move(trial);
                f = f_trial;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (drop <= kCssTolerance * std::max(f, 1e-300)) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped || converged) {
            if (!stepped) {
                // No downhill step available at any damping: a (local)
                // minimum to machine precision.
                converged = true;
            }
            return;
        }
    }
}

ArimaModel finish_model(const CssProblem& problem, std::vector<double> c, int p, int d, int q,
                        bool rank_warning) {
    ArimaModel model;
    model.p = p;
    model.d = d;
    model.q = q;
    model.intercept = c[0];
    for (std::size_t k = 1; k < problem.n_linear(); ++k) {
        model.exog.push_back(c[k]);
    }
    for (int i = 0; i < p; ++i) {
        model.ar.push_back(c[problem.n_linear() + static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < q; ++j) {
        model.ma.push_back(c[problem.n_linear() + static_cast<std::size_t>(p + j)]);
    }
    model.noise_variance = problem.sse(c) / static_cast<double>(problem.n_scored());
    model.rank_warning = rank_warning;
    model.stationary_warning = !ar_is_stationary(model.ar);
    return model;
}

ArimaModel fit_css(std::span<const double> series, const ExogMatrix* exog, int p, int d,
                   int q) {
    if (p < 0 || d < 0 || q < 0) {
        throw Error("bad-orders", "model orders must be nonnegative");
    }
    if (series.size() <= static_cast<std::size_t>(p + q + d + 1)) {
        throw Error("short-series", "series too short for the requested orders");
    }
    CssProblem problem(series, exog, p, d, q);
    bool rank_warning = false;
    auto c = initial_parameters(problem, p, q, &rank_warning);
    bool converged = false;
    run_levenberg_marquardt(problem, c, converged);
    ArimaModel model = finish_model(problem, std::move(c), p, d, q, rank_warning);
    model.converged = converged;
    return model;
}

} // namespace

void ExogMatrix::validate() const {
    if (cols.size() != names.size() && !names.empty()) {
        throw Error("bad-exog", "exogenous names do not match column count");
    }
    for (const auto& col : cols) {
        if (col.size() != rows()) {
            throw Error("bad-exog", "exogenous columns have unequal lengths");
        }
    }
}

ExogMatrix lagged_exog(const ExogMatrix& contemporaneous) {
    contemporaneous.validate();
    ExogMatrix out;
    out.names = contemporaneous.names;
    for (const auto& col : contemporaneous.cols) {
        std::vector<double> shifted;
        shifted.reserve(col.size() + 1);
        shifted.push_back(col.empty() ? 0.0 : col.front());
        shifted.insert(shifted.end(), col.begin(), col.end());
        out.cols.push_back(std::move(shifted));
    }
    return out;
}

std::size_t ArimaModel::warmup() const {
    return static_cast<std::size_t>(d) + static_cast<std::size_t>(std::max(p, q));
}

nlohmann::json ArimaModel::to_json() const {
    return nlohmann::json{{"kind", "arima"},
                          {"p", p},
                          {"d", d},
                          {"q", q},
                          {"ar", ar},
                          {"ma", ma},
                          {"intercept", intercept},
                          {"exog", exog},
                          {"noise_variance", noise_variance},
                          {"fitted_on", fitted_on},
                          {"converged", converged},
                          {"stationary_warning", stationary_warning},
                          {"rank_warning", rank_warning}};
}

ArimaModel ArimaModel::from_json(const nlohmann::json& j) {
    ArimaModel m;
    m.p = j.at("p").get<int>();
    m.d = j.at("d").get<int>();
    m.q = j.at("q").get<int>();
    m.ar = j.at("ar").get<std::vector<double>>();
    m.ma = j.at("ma").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    m.exog = j.at("exog").get<std::vector<double>>();
    m.noise_variance = j.at("noise_variance").get<double>();
    m.fitted_on = j.at("fitted_on").get<std::string>();
    m.converged = j.at("converged").get<bool>();
    m.stationary_warning = j.at("stationary_warning").get<bool>();
    m.rank_warning = j.at("rank_warning").get<bool>();
    return m;
}

ArimaModel fit_ar(std::span<const double> series, int p) {
    if (p < 1) {
        throw Error("bad-orders", "fit_ar requires p >= 1");
    }
    if (series.size() <= static_cast<std::size_t>(p) + 1) {
        throw Error("short-series", "series too short for AR(p)");
    }
    explore::AcfResult r;
    try {
        r = explore::acf(series, static_cast<std::size_t>(p));
    } catch (const Error& e) {
        if (std::string(e.code()) == "constant-series") {
            throw Error("constant-series", "Yule-Walker system is singular for a constant series");
        }
        throw;
    }
    Matrix toeplitz(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    std::vector<double> rhs(static_cast<std::size_t>(p), 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            toeplitz.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                r.values[static_cast<std::size_t>(std::abs(i - j))];
        }
        rhs[static_cast<std::size_t>(i)] = r.values[static_cast<std::size_t>(i) + 1];
    }
    ArimaModel model;
    model.p = p;
    model.ar = solve_linear(std::move(toeplitz), std::move(rhs));
    model.intercept = mean(series);
    double c0 = 0.0;
    for (double y : series) {
        c0 += (y - model.intercept) * (y - model.intercept);
    }
    c0 /= static_cast<double>(series.size());
    double explained = 0.0;
    for (int i = 0; i < p; ++i) {
        explained += model.ar[static_cast<std::size_t>(i)] * r.values[static_cast<std::size_t>(i) + 1];
    }
    model.noise_variance = c0 * (1.0 - explained);
    model.stationary_warning = !ar_is_stationary(model.ar);
    return model;
}

ArimaModel fit_arima(std::span<const double> series, int p, int d, int q) {
    return fit_css(series, nullptr, p, d, q);
}

ArimaModel fit_arimax(std::span<const double> series, const ExogMatrix& exog, int p, int d,
                      int q) {
    if (exog.dims() == 0) {
        throw Error("bad-exog", "fit_arimax requires at least one exogenous column");
    }
    return fit_css(series, &exog, p, d, q);
}

double forecast_one_step(const ArimaModel& model, std::span<const double> history,
                         const ExogMatrix* exog) {
    if (model.has_exog()) {
        if (exog == nullptr || exog->dims() != model.exog.size()) {
            throw Error("bad-exog", "model requires matching exogenous columns");
        }
        // Exogenous rows are pre-lagged; the extra final row carries what is
        // known before the step being predicted.
        if (exog->rows() != history.size() + 1) {
            throw Error("length-mismatch",
                        "exogenous matrix needs history length + 1 rows (the forecast row)");
        }
    }
    const std::size_t need = static_cast<std::size_t>(model.d) +
                             static_cast<std::size_t>(std::max(model.p, model.q));
    if (history.size() < need) {
        throw Error("short-history", "history too short for one-step forecast");
    }

    // Regression-adjusted series v, then d-fold differences; keep the last
    // value at every difference level to undo the differencing.
    std::vector<double> v(history.begin(), history.end());
    if (model.has_exog()) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            for (std::size_t k = 0; k < model.exog.size(); ++k) {
                v[t] -= model.exog[k] * exog->cols[k][t];
            }
        }
    }
    std::vector<double> level_last;
    std::vector<double> w(v);
    for (int round = 0; round < model.d; ++round) {
        level_last.push_back(w.back());
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            w[i] = w[i + 1] - w[i];
        }
        w.pop_back();
    }

    const std::size_t m = w.size();
    const auto start = static_cast<std::size_t>(std::max(model.p, model.q));
    std::vector<double> z(m);
    for (std::size_t t = 0; t < m; ++t) {
        z[t] = w[t] - model.intercept;
    }
    std::vector<double> eps(m, 0.0);
    for (std::size_t t = start; t < m; ++t) {
        double e = z[t];
        for (int i = 1; i <= model.p; ++i) {
            e -= model.ar[static_cast<std::size_t>(i - 1)] * z[t - static_cast<std::size_t>(i)];
        }
        for (int j = 1; j <= model.q; ++j) {
            e -= model.ma[static_cast<std::size_t>(j - 1)] * eps[t - static_cast<std::size_t>(j)];
        }
        eps[t] = e;
    }

    double z_next = 0.0;
    for (int i = 1; i <= model.p; ++i) {
        z_next += model.ar[static_cast<std::size_t>(i - 1)] * z[m - static_cast<std::size_t>(i)];
    }
    for (int j = 1; j <= model.q; ++j) {
        z_next += model.ma[static_cast<std::size_t>(j - 1)] * eps[m - static_cast<std::size_t>(j)];
    }
    double prediction = z_next + model.intercept;
    for (std::size_t lvl = level_last.size(); lvl-- > 0;) {
        prediction += level_last[lvl];
    }
    if (model.has_exog()) {
        for (std::size_t k = 0; k < model.exog.size(); ++k) {
            prediction += model.exog[k] * exog->cols[k].back();
        }
    }
    return prediction;
}

ArimaModel naive_mean_baseline(std::span<const double> train) {
    if (train.empty()) {
        throw Error("empty-series", "baseline requires a non-empty training series");
    }
    ArimaModel model;
    model.intercept = mean(train);
    return model;
}

bool ar_is_stationary(std::span<const double> phi) {
    // Schur-Cohn test on z^p - phi_1 z^(p-1) - ... - phi_p, whose roots are
    // the reciprocals of the AR polynomial's.
    std::vector<double> a;
    a.reserve(phi.size() + 1);
    a.push_back(1.0);
    for (double f : phi) {
        a.push_back(-f);
    }
    std::size_t n = phi.size();
    while (n > 0) {
        const double k = a[n] / a[0];
        if (!(std::abs(k) < 1.0)) {
            return false;
        }
        std::vector<double> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = a[i] - k * a[n - i];
        }
        a = std::move(b);
        --n;
    }
    return true;
}

OrderSuggestion suggest_orders(std::span<const double> series, std::size_t max_lag) {
    const auto partial = explore::pacf(series, max_lag);
    const auto full = explore::acf(series, max_lag);
    // Cutoff = smallest order whose next few lags all stay inside the
    // confidence band; a plain "last lag outside the band" rule trips over
    // the ~5% of sample lags that leave the band by chance.
    auto cutoff = [max_lag](const explore::AcfResult& r) {
        for (std::size_t k = 0; k <= max_lag; ++k) {
            bool quiet = true;
            const std::size_t upto = std::min(max_lag, k + 3);
            for (std::size_t j = k + 1; j <= upto; ++j) {
                if (std::abs(r.values[j]) > r.confidence_band) {
                    quiet = false;
                    break;
                }
            }
            if (quiet) {
                return static_cast<int>(k);
            }
        }
        return static_cast<int>(max_lag);
    };
    OrderSuggestion s;
    s.p = cutoff(partial);
    s.q = cutoff(full);
    return s;
}

} // namespace chainpulse::forecast

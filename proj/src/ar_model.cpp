#include "tsboot/models.hpp"

#include "tsboot/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsboot {

namespace {

// Pivots below this fraction of the largest pivot count as zero.
constexpr double kRankThreshold = 1e-10;
// Residual sums of squares are floored at this fraction of the total sum of
// squares before taking logs.
constexpr double kRssFloor = 1e-12;

/// Design rows t = first..n-1 with columns (1, x_{t-1}, ..., x_{t-order}).
Eigen::MatrixXd lag_design(std::span<const double> x, std::size_t first, std::size_t order) {
    const std::size_t rows = x.size() - first;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(order + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t t = first + i;
        const auto r = static_cast<Eigen::Index>(i);
        design(r, 0) = 1.0;
        for (std::size_t j = 1; j <= order; ++j) {
            design(r, static_cast<Eigen::Index>(j)) = x[t - j];
        }
    }
    return design;
}

Eigen::VectorXd response(std::span<const double> x, std::size_t first) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(x.size() - first));
    for (std::size_t t = first; t < x.size(); ++t) y(static_cast<Eigen::Index>(t - first)) = x[t];
    return y;
}

void require_length(std::size_t n, std::size_t order) {
    if (order < 1) throw std::invalid_argument("AR order must be positive");
    if (n < order + 2) {
        throw Error(ErrorCode::InsufficientData,
                    "series of length " + std::to_string(n) + " is too short for AR(" +
                        std::to_string(order) + ")");
    }
}

}  // namespace

double FittedArModel::predict(std::span<const double> history) const {
    double value = intercept;
    for (std::size_t j = 1; j <= order; ++j) {
        value += coefficients[j - 1] * history[history.size() - j];
    }
    return value;
}

FittedArModel fit_ar(std::span<const double> series, std::size_t order, std::size_t channel) {
    require_length(series.size(), order);
    const Eigen::MatrixXd design = lag_design(series, order, order);
    const Eigen::VectorXd y = response(series, order);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < design.cols()) {
        throw Error(ErrorCode::SingularDesign,
                    "lag matrix is rank deficient for AR(" + std::to_string(order) +
                        ") on channel " + std::to_string(channel));
    }
    const Eigen::VectorXd beta = qr.solve(y);

    FittedArModel model;
    model.order = order;
    model.channel = channel;
    model.intercept = beta(0);
    model.coefficients.resize(order);
    for (std::size_t j = 0; j < order; ++j) {
        model.coefficients[j] = beta(static_cast<Eigen::Index>(j + 1));
    }
    model.residuals.resize(series.size() - order);
    double rss = 0.0;
    for (std::size_t t = order; t < series.size(); ++t) {
        const double e = series[t] - model.predict(series.subspan(t - order, order));
        model.residuals[t - order] = e;
        rss += e * e;
    }
    model.sigma2 = rss / static_cast<double>(series.size() - order);
    return model;
}

FittedArModel fit_mean_model(std::span<const double> series, std::size_t order,
                             std::size_t channel) {
    require_length(series.size(), order);
    FittedArModel model;
    model.order = order;
    model.channel = channel;
    model.mean_only = true;
    model.intercept =
        std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    model.coefficients.assign(order, 0.0);
    model.residuals.resize(series.size() - order);
    double rss = 0.0;
    for (std::size_t t = order; t < series.size(); ++t) {
        const double e = series[t] - model.intercept;
        model.residuals[t - order] = e;
        rss += e * e;
    }
    model.sigma2 = rss / static_cast<double>(series.size() - order);
    return model;
}

FittedArModel fit_ar_or_mean(std::span<const double> series, std::size_t order,
                             std::size_t channel) {
    try {
        return fit_ar(series, order, channel);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularDesign) throw;
        return fit_mean_model(series, order, channel);
    }
}

std::vector<double> common_sample_rss(std::span<const double> series, std::size_t p_max) {
    require_length(series.size(), p_max);
    const Eigen::VectorXd y = response(series, p_max);
    const Eigen::MatrixXd full = lag_design(series, p_max, p_max);
    std::vector<double> rss(p_max);
    for (std::size_t p = 1; p <= p_max; ++p) {
        const Eigen::MatrixXd design = full.leftCols(static_cast<Eigen::Index>(p + 1));
        // Rank-revealing solve: a redundant higher lag still yields the
        // projection residual of the lower-order fit.
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
        cod.setThreshold(kRankThreshold);
        if (p == 1 && cod.rank() < 2) {
            throw Error(ErrorCode::SingularDesign, "lag matrix is rank deficient for AR(1)");
        }
        const Eigen::VectorXd beta = cod.solve(y);
        rss[p - 1] = (y - design * beta).squaredNorm();
    }
    return rss;
}

std::vector<double> order_criteria(std::span<const double> series, std::size_t p_max,
                                   OrderCriterion criterion) {
    const std::vector<double> rss = common_sample_rss(series, p_max);
    const std::size_t n_eff = series.size() - p_max;
    const double ne = static_cast<double>(n_eff);

    const auto tail = series.subspan(p_max);
    const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / ne;
    double tss = 0.0;
    for (const double v : tail) tss += (v - mean) * (v - mean);
    const double floor = std::max(kRssFloor * tss, std::numeric_limits<double>::min());

    std::vector<double> values(p_max);
    for (std::size_t p = 1; p <= p_max; ++p) {
        const double fit_term = ne * std::log(std::max(rss[p - 1], floor) / ne);
        const double k = static_cast<double>(p + 1);
        values[p - 1] = fit_term + (criterion == OrderCriterion::Aic ? 2.0 * k : k * std::log(ne));
    }
    return values;
}

std::size_t select_ar_order(std::span<const double> series, std::size_t p_max,
                            OrderCriterion criterion) {
    if (p_max < 1) throw std::invalid_argument("p_max must be positive");
    const std::vector<double> values = order_criteria(series, p_max, criterion);
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] < values[best]) best = k;
    }
    return best + 1;
}

std::size_t default_max_ar_order(std::size_t n) noexcept {
    return std::max<std::size_t>(1, std::min<std::size_t>(10, n / 4));
}

bool is_stationary(std::span<const double> coefficients) {
    const auto p = static_cast<Eigen::Index>(coefficients.size());
    if (p == 0) return true;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = coefficients[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& eig = solver.eigenvalues();
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        if (std::abs(eig(i)) >= 1.0) return false;
    }
    return true;
}

}  // namespace tsboot

#include "riccati/market_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <optional>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"

namespace riccati {

namespace {

// Pivots below this fraction of the largest diagonal entry count as singular.
constexpr double kRelativePivotTol = 1e-12;

bool is_missing(const std::string& cell) {
    std::string lower;
    for (char ch : cell) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return lower.empty() || lower == "na" || lower == "nan" || lower == "null";
}

}  // namespace

ReturnsIngest read_returns_csv(std::istream& in, InputKind kind, double period_per_year) {
    if (!(period_per_year > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "period_per_year must be positive");
    }
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidConfig, "returns CSV is empty");
    ReturnsIngest out;
    for (const auto& name : csv::split(line)) out.returns.asset_names.push_back(csv::trim(name));
    const size_t n = out.returns.asset_names.size();
    if (n == 0) throw Error(ErrorCode::InvalidConfig, "returns CSV has no asset columns");

    std::vector<Eigen::VectorXd> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split(line);
        if (cells.size() != n) {
            throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + " has " +
                                                      std::to_string(cells.size()) + " cells, expected " +
                                                      std::to_string(n));
        }
        Eigen::VectorXd row(static_cast<Eigen::Index>(n));
        bool missing = false;
        for (size_t c = 0; c < n; ++c) {
            const std::string cell = csv::trim(cells[c]);
            if (is_missing(cell)) {
                missing = true;
                break;
            }
            row(static_cast<Eigen::Index>(c)) =
                csv::parse_double(cell, "line " + std::to_string(line_no));
        }
        if (missing) {
            ++out.dropped_rows;
            continue;
        }
        if (kind == InputKind::Prices && (row.array() <= 0.0).any()) {
            throw Error(ErrorCode::InvalidConfig,
                        "non-positive price on line " + std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }

    const size_t first = kind == InputKind::Prices ? 1 : 0;
    const size_t t_obs = rows.size() > first ? rows.size() - first : 0;
    Eigen::MatrixXd obs(static_cast<Eigen::Index>(t_obs), static_cast<Eigen::Index>(n));
    for (size_t t = 0; t < t_obs; ++t) {
        const auto r = static_cast<Eigen::Index>(t);
        if (kind == InputKind::Prices) {
            obs.row(r) = (rows[t + 1].array() / rows[t].array()).log().matrix().transpose();
        } else {
            obs.row(r) = rows[t].transpose();
        }
    }
    out.returns.observations = std::move(obs);
    out.returns.period_per_year = period_per_year;
    return out;
}

ReturnsIngest read_returns_csv(const std::string& path, InputKind kind, double period_per_year) {
    auto in = csv::open_in(path);
    return read_returns_csv(in, kind, period_per_year);
}

MarketModel estimate_moments(const ReturnsMatrix& returns, double epsilon, double rate,
                             double shrinkage) {
    const Eigen::MatrixXd& x = returns.observations;
    const Eigen::Index t_obs = x.rows();
    const Eigen::Index n = x.cols();
    if (n == 0) throw Error(ErrorCode::InvalidModel, "no assets");
    if (t_obs < 2) {
        throw Error(ErrorCode::SingularCovariance,
                    "need at least two observations; consider more data or shrinkage");
    }
    const Eigen::VectorXd mean = x.colwise().mean().transpose();
    const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(t_obs - 1);
    cov = 0.5 * (cov + cov.transpose());

    const double scale = returns.period_per_year;
    MarketModel model;
    model.mu = mean * scale;
    model.sigma_cov = shrink_covariance(cov * scale, shrinkage);
    model.epsilon = epsilon;
    model.rate = rate;

    const Eigen::LLT<Eigen::MatrixXd> llt(model.sigma_cov);
    const double max_diag = model.sigma_cov.diagonal().maxCoeff();
    bool singular = llt.info() != Eigen::Success || !(max_diag > 0.0);
    if (!singular) {
        const Eigen::VectorXd pivots = llt.matrixL().toDenseMatrix().diagonal().array().square();
        singular = pivots.minCoeff() < kRelativePivotTol * max_diag;
    }
    if (singular) {
        throw Error(ErrorCode::SingularCovariance,
                    "sample covariance is singular; set assets.shrinkage > 0 or add observations");
    }
    model.validate();
    return model;
}

Eigen::MatrixXd shrink_covariance(const Eigen::MatrixXd& sigma, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "shrinkage must lie in [0, 1]");
    }
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(sigma.rows(), sigma.cols());
    diag.diagonal() = sigma.diagonal();
    return (1.0 - lambda) * sigma + lambda * diag;
}

}  // namespace riccati

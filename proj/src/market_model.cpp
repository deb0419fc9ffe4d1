#include "riccati/market_model.hpp"

#include <cmath>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

void MarketModel::validate() const {
    const auto n = mu.size();
    if (n == 0) throw Error(ErrorCode::InvalidModel, "empty asset universe");
    if (sigma_cov.rows() != n || sigma_cov.cols() != n) {
        throw Error(ErrorCode::InvalidModel,
                    "covariance is " + std::to_string(sigma_cov.rows()) + "x" +
                        std::to_string(sigma_cov.cols()) + " but mu has " + std::to_string(n) +
                        " entries");
    }
    if (!mu.allFinite() || !sigma_cov.allFinite()) {
        throw Error(ErrorCode::InvalidModel, "non-finite market data");
    }
    const double asym = (sigma_cov - sigma_cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw Error(ErrorCode::InvalidModel, "covariance asymmetry " + std::to_string(asym));
    }
    if (!std::isfinite(epsilon) || !std::isfinite(rate)) {
        throw Error(ErrorCode::InvalidModel, "non-finite epsilon or rate");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sigma_cov);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NonConvex, "covariance is not positive definite");
    }
    const Eigen::VectorXd pivots = llt.matrixL().toDenseMatrix().diagonal();
    if (pivots.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonConvex, "covariance is not positive definite");
    }
}

MarketModel make_market(Eigen::VectorXd mu, Eigen::MatrixXd sigma, double epsilon, double rate) {
    MarketModel m{std::move(mu), std::move(sigma), epsilon, rate};
    m.validate();
    return m;
}

}  // namespace riccati

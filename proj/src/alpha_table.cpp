#include "riccati/alpha_table.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/simplex_qp.hpp"

namespace riccati {

namespace {

std::vector<bool> support_of(const Eigen::MatrixXd& rows, Eigen::Index i, double tol) {
    std::vector<bool> s(static_cast<size_t>(rows.cols()));
    for (Eigen::Index c = 0; c < rows.cols(); ++c) s[c] = rows(i, c) > tol;
    return s;
}

}  // namespace

AlphaTable::AlphaTable(std::vector<double> phi_grid, std::vector<double> alpha_vals,
                       std::vector<double> alpha_prime_vals, Eigen::MatrixXd theta_rows)
    : phi_grid_(std::move(phi_grid)),
      alpha_vals_(std::move(alpha_vals)),
      alpha_prime_vals_(std::move(alpha_prime_vals)),
      theta_rows_(std::move(theta_rows)) {
    const size_t n = phi_grid_.size();
    if (n < 2 || alpha_vals_.size() != n || alpha_prime_vals_.size() != n ||
        static_cast<size_t>(theta_rows_.rows()) != n || theta_rows_.cols() < 1) {
        throw Error(ErrorCode::InvalidConfig, "alpha table columns have inconsistent lengths");
    }
    for (size_t i = 0; i < n; ++i) {
        if (!(alpha_prime_vals_[i] > 0.0)) {
            throw Error(ErrorCode::TableMonotonicityViolation,
                        "non-positive alpha' at phi = " + csv::format(phi_grid_[i]));
        }
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        if (!(alpha_vals_[i + 1] > alpha_vals_[i])) {
            throw Error(ErrorCode::TableMonotonicityViolation,
                        "alpha not increasing between phi = " + csv::format(phi_grid_[i]) +
                            " and " + csv::format(phi_grid_[i + 1]));
        }
    }
    alpha_interp_ = MonotoneHermite(phi_grid_, alpha_vals_, alpha_prime_vals_);
    theta_interp_.reserve(static_cast<size_t>(theta_rows_.cols()));
    for (Eigen::Index c = 0; c < theta_rows_.cols(); ++c) {
        std::vector<double> col(n);
        for (size_t i = 0; i < n; ++i) col[i] = theta_rows_(static_cast<Eigen::Index>(i), c);
        theta_interp_.push_back(MonotoneHermite::from_values(phi_grid_, std::move(col)));
    }
}

AlphaTable::Sample AlphaTable::eval(double phi) const noexcept {
    bool clamped = false;
    if (phi < phi_grid_.front()) {
        phi = phi_grid_.front();
        clamped = true;
    } else if (phi > phi_grid_.back()) {
        phi = phi_grid_.back();
        clamped = true;
    }
    const auto s = alpha_interp_.eval(phi);
    return {s.value, s.derivative, clamped};
}

Eigen::VectorXd AlphaTable::theta_at(double phi) const {
    phi = std::clamp(phi, phi_grid_.front(), phi_grid_.back());
    Eigen::VectorXd theta(theta_rows_.cols());
    for (Eigen::Index c = 0; c < theta.size(); ++c) {
        theta(c) = std::max(0.0, theta_interp_[static_cast<size_t>(c)].eval(phi).value);
    }
    const double sum = theta.sum();
    if (sum > 0.0) {
        theta /= sum;
    } else {
        theta.setConstant(1.0 / static_cast<double>(theta.size()));
    }
    return theta;
}

std::vector<std::size_t> AlphaTable::breakpoint_nodes(double weight_tol) const {
    std::vector<std::size_t> out;
    const auto n = static_cast<Eigen::Index>(phi_grid_.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto s = support_of(theta_rows_, i, weight_tol);
        const bool left = i > 0 && support_of(theta_rows_, i - 1, weight_tol) != s;
        const bool right = i + 1 < n && support_of(theta_rows_, i + 1, weight_tol) != s;
        if (left || right) out.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

std::vector<double> AlphaTable::breakpoints(double weight_tol) const {
    std::vector<double> out;
    for (Eigen::Index i = 0; i + 1 < static_cast<Eigen::Index>(phi_grid_.size()); ++i) {
        if (support_of(theta_rows_, i, weight_tol) != support_of(theta_rows_, i + 1, weight_tol)) {
            out.push_back(0.5 * (phi_grid_[i] + phi_grid_[i + 1]));
        }
    }
    return out;
}

std::vector<double> alpha_table_grid(double phi_lo, double phi_hi, double h_phi) {
    if (!(h_phi > 0.0) || !(phi_hi > phi_lo) || phi_lo < kQuadraticPhiMin) {
        throw Error(ErrorCode::InvalidConfig, "alpha table needs -1 <= phi_lo < phi_hi and h_phi > 0");
    }
    const auto intervals = static_cast<size_t>(std::ceil((phi_hi - phi_lo) / h_phi - 1e-9));
    std::vector<double> grid(intervals + 1);
    for (size_t i = 0; i < intervals; ++i) grid[i] = phi_lo + static_cast<double>(i) * h_phi;
    grid.back() = phi_hi;
    if (grid.front() < kTablePhiFloor) grid.front() = kTablePhiFloor;
    if (grid.size() > 1 && !(grid[1] > grid[0])) {
        throw Error(ErrorCode::InvalidConfig, "h_phi too small near the domain floor");
    }
    return grid;
}

AlphaTable build_alpha_table(const MarketModel& model, double phi_lo, double phi_hi, double h_phi) {
    model.validate();
    std::vector<double> grid = alpha_table_grid(phi_lo, phi_hi, h_phi);
    const size_t n = grid.size();
    std::vector<double> alpha(n), alpha_prime(n);
    Eigen::MatrixXd theta(static_cast<Eigen::Index>(n), model.assets());

    QpSolution prev;
    for (size_t i = 0; i < n; ++i) {
        QpSolution sol = solve_parametric_qp(model, grid[i], i == 0 ? nullptr : &prev);
        alpha[i] = sol.value;
        alpha_prime[i] = 0.5 * model.variance(sol.theta);
        theta.row(static_cast<Eigen::Index>(i)) = sol.theta.transpose();
        prev = std::move(sol);
    }
    return AlphaTable(std::move(grid), std::move(alpha), std::move(alpha_prime), std::move(theta));
}

void write_alpha_table_csv(const AlphaTable& table, std::ostream& out) {
    out << "phi,alpha,alpha_prime";
    for (Eigen::Index c = 0; c < table.assets(); ++c) out << ",theta_" << (c + 1);
    out << '\n';
    for (size_t i = 0; i < table.size(); ++i) {
        out << csv::format(table.phi_grid()[i]) << ',' << csv::format(table.alpha_vals()[i]) << ','
            << csv::format(table.alpha_prime_vals()[i]);
        for (Eigen::Index c = 0; c < table.assets(); ++c) {
            out << ',' << csv::format(table.theta_rows()(static_cast<Eigen::Index>(i), c));
        }
        out << '\n';
    }
}

void write_alpha_table_csv(const AlphaTable& table, const std::string& path) {
    auto f = csv::open_out(path);
    write_alpha_table_csv(table, f);
}

AlphaTable read_alpha_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidConfig, "empty alpha table CSV");
    const auto header = csv::split(csv::trim(line));
    if (header.size() < 4 || header[0] != "phi" || header[1] != "alpha" || header[2] != "alpha_prime") {
        throw Error(ErrorCode::InvalidConfig, "unexpected alpha table header: " + line);
    }
    const size_t assets = header.size() - 3;
    for (size_t c = 0; c < assets; ++c) {
        if (header[3 + c] != "theta_" + std::to_string(c + 1)) {
            throw Error(ErrorCode::InvalidConfig, "unexpected alpha table column " + header[3 + c]);
        }
    }
    std::vector<double> phi, alpha, alpha_prime;
    std::vector<std::vector<double>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split(csv::trim(line));
        const std::string ctx = "alpha table line " + std::to_string(line_no);
        if (cells.size() != header.size()) throw Error(ErrorCode::InvalidConfig, ctx + ": wrong column count");
        phi.push_back(csv::parse_double(cells[0], ctx));
        alpha.push_back(csv::parse_double(cells[1], ctx));
        alpha_prime.push_back(csv::parse_double(cells[2], ctx));
        std::vector<double> r(assets);
        for (size_t c = 0; c < assets; ++c) r[c] = csv::parse_double(cells[3 + c], ctx);
        rows.push_back(std::move(r));
    }
    Eigen::MatrixXd theta(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(assets));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < assets; ++c)
            theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    return AlphaTable(std::move(phi), std::move(alpha), std::move(alpha_prime), std::move(theta));
}

AlphaTable read_alpha_table_csv(const std::string& path) {
    auto f = csv::open_in(path);
    return read_alpha_table_csv(f);
}

}  // namespace riccati

#include "causal/fisherz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace causal {

namespace {

constexpr double kClampEps = 1e-12;
constexpr double kSingularTol = 1e-12;

Eigen::MatrixXd covariance_matrix(const Eigen::MatrixXd& values) {
    const auto n = values.rows();
    if (n < 2) throw std::invalid_argument("need at least two rows");
    const Eigen::MatrixXd centered = values.rowwise() - values.colwise().mean();
    return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
    return out;
}

// Residual covariance of (a, b) after regressing out cond:
// Schur complement cov_ab - cov_aC cov_CC^-1 cov_Cb. The strict variant
// throws on a singular conditioning block; the tolerant variant projects via
// the pseudo-inverse and reports a vanished residual variance as nullopt.
std::optional<double> schur_partial_corr(const Eigen::MatrixXd& cov, int a, int b,
                                         const std::vector<int>& cond, bool strict) {
    const std::vector<int> pair{a, b};
    Eigen::Matrix2d resid;
    resid << cov(a, a), cov(a, b), cov(b, a), cov(b, b);
    if (!cond.empty()) {
        const Eigen::MatrixXd cc = submatrix(cov, cond, cond);
        const Eigen::MatrixXd cp = submatrix(cov, cond, pair);
        const double scale = std::max(cc.diagonal().maxCoeff(), 1.0);
        if (strict) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(cc);
            if (ldlt.info() != Eigen::Success ||
                ldlt.vectorD().minCoeff() <= kSingularTol * scale)
                throw degenerate_covariance();
            resid -= (cp.transpose() * ldlt.solve(cp)).eval();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cc);
            const Eigen::VectorXd vals = eig.eigenvalues();
            Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
            for (Eigen::Index t = 0; t < vals.size(); ++t)
                if (vals(t) > kSingularTol * scale) inv(t) = 1.0 / vals(t);
            const Eigen::MatrixXd pinv =
                eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
            resid -= (cp.transpose() * pinv * cp).eval();
        }
    }
    const double var_scale = std::max({cov(a, a), cov(b, b), 1e-300});
    if (resid(0, 0) <= kSingularTol * var_scale || resid(1, 1) <= kSingularTol * var_scale) {
        if (strict) throw degenerate_covariance();
        return std::nullopt;
    }
    double r = resid(0, 1) / std::sqrt(resid(0, 0) * resid(1, 1));
    return std::clamp(r, -1.0, 1.0);
}

}  // namespace

Dataset::Dataset(NodeSet columns, Eigen::MatrixXd values)
    : columns_(std::move(columns)), values_(std::move(values)) {
    if (values_.cols() != columns_.size()) throw std::invalid_argument("column count mismatch");
    if (!values_.allFinite()) throw std::invalid_argument("dataset has missing or non-finite values");
}

void Dataset::set_groups(ColumnGroups g) {
    if (g.variables.size() != static_cast<int>(g.columns.size()))
        throw std::invalid_argument("group count mismatch");
    for (const auto& cols : g.columns)
        for (int c : cols)
            if (c < 0 || c >= column_count()) throw std::invalid_argument("group column out of range");
    groups_ = std::move(g);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile argument outside (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

double partial_correlation(const Dataset& d, int i, int j, const std::vector<int>& cond) {
    if (i == j) throw std::invalid_argument("columns must differ");
    for (int c : cond)
        if (c == i || c == j) throw std::invalid_argument("conditioning on a tested column");
    const Eigen::MatrixXd cov = covariance_matrix(d.values());
    auto r = schur_partial_corr(cov, i, j, cond, /*strict=*/true);
    return *r;
}

double fisherz_statistic(double r, long n, int cond_size) {
    const long dof = n - cond_size - 3;
    if (dof <= 0) throw std::invalid_argument("insufficient sample size");
    r = std::clamp(r, -(1.0 - kClampEps), 1.0 - kClampEps);
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    return std::sqrt(static_cast<double>(dof)) * std::fabs(z);
}

Verdict fisherz_test(const Dataset& d, const CiQuery& q, double alpha) {
    const double r = partial_correlation(d, q.i, q.j, mask_to_indices(q.cond));
    const double stat = fisherz_statistic(r, d.row_count(), mask_count(q.cond));
    return stat <= normal_quantile(1.0 - alpha / 2.0) ? Verdict::Independent : Verdict::Dependent;
}

FisherZOracle::FisherZOracle(Dataset d, double alpha)
    : CiOracle(d.groups() ? d.groups()->variables : d.columns(),
               Capability::Statistical),
      data_(std::move(d)),
      alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0,1)");
    if (data_.row_count() <= data_.column_count() + 3)
        throw std::invalid_argument("insufficient sample size for Fisher-z");
    covariance_ = covariance_matrix(data_.values());
    if (data_.groups()) {
        groups_ = data_.groups()->columns;
    } else {
        groups_.resize(static_cast<std::size_t>(data_.column_count()));
        for (int c = 0; c < data_.column_count(); ++c) groups_[static_cast<std::size_t>(c)] = {c};
    }
}

bool FisherZOracle::query_impl(const CiQuery& q) const { return grouped_query(q); }

bool FisherZOracle::grouped_query(const CiQuery& q) const {
    const auto& gi = groups_[static_cast<std::size_t>(q.i)];
    const auto& gj = groups_[static_cast<std::size_t>(q.j)];

    // Conditioning columns: concatenate the groups of the conditioning
    // variables and drop exact duplicates (tuple components can be copies).
    std::vector<int> cond;
    for (int v : mask_to_indices(q.cond))
        for (int c : groups_[static_cast<std::size_t>(v)]) {
            bool dup = false;
            for (int seen : cond)
                if (data_.values().col(seen) == data_.values().col(c)) {
                    dup = true;
                    break;
                }
            if (!dup) cond.push_back(c);
        }

    const std::size_t pair_count = gi.size() * gj.size();
    const double per_pair_alpha = alpha_ / static_cast<double>(pair_count);
    const double threshold = normal_quantile(1.0 - per_pair_alpha / 2.0);
    const bool strict = pair_count == 1 && cond.size() == static_cast<std::size_t>(mask_count(q.cond));

    for (int a : gi) {
        for (int b : gj) {
            const auto r = schur_partial_corr(covariance_, a, b, cond, strict);
            if (!r) continue;  // conditionally constant component: no evidence
            if (fisherz_statistic(*r, data_.row_count(), static_cast<int>(cond.size())) > threshold)
                return false;
        }
    }
    return true;
}

}  // namespace causal

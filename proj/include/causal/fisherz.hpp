#ifndef CAUSAL_FISHERZ_HPP
#define CAUSAL_FISHERZ_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "causal/ci.hpp"
#include "causal/node_set.hpp"

namespace causal {

// Variable -> column-group map for tuple-valued variables that were expanded
// into one numeric column per component.
struct ColumnGroups {
    NodeSet variables;
    std::vector<std::vector<int>> columns;  // one entry per variable
};

// Numeric data: one row per sample, columns labelled. No missing values.
class Dataset {
public:
    Dataset(NodeSet columns, Eigen::MatrixXd values);

    const NodeSet& columns() const { return columns_; }
    const Eigen::MatrixXd& values() const { return values_; }
    long row_count() const { return values_.rows(); }
    int column_count() const { return columns_.size(); }

    const std::optional<ColumnGroups>& groups() const { return groups_; }
    void set_groups(ColumnGroups g);

private:
    NodeSet columns_;
    Eigen::MatrixXd values_;
    std::optional<ColumnGroups> groups_;
};

// Inverse standard-normal CDF (Wichura's AS 241, PPND16 constants); absolute
// error well below the 1e-9 this project relies on for test thresholds.
double normal_quantile(double p);

// Sample partial correlation of columns i and j given cond, from the
// correlation matrix restricted to {i,j} u cond. Result clamped to [-1, 1].
// Throws degenerate_covariance when the conditioning block is singular or a
// residual variance vanishes.
double partial_correlation(const Dataset& d, int i, int j, const std::vector<int>& cond);

enum class Verdict { Independent, Dependent };

// z = atanh(r) clamped at |r| = 1 - 1e-12; statistic sqrt(n - |cond| - 3) * |z|;
// independent iff statistic <= Phi^-1(1 - alpha/2).
double fisherz_statistic(double r, long n, int cond_size);
Verdict fisherz_test(const Dataset& d, const CiQuery& q, double alpha);

// Statistical oracle over a dataset. Ungrouped: one Fisher-z test per query.
// Grouped (tuple-valued variables): maximum statistic over all component
// pairs with a Bonferroni-corrected threshold; exactly duplicated
// conditioning columns are dropped, the conditioning block is handled
// rank-tolerantly, and conditionally degenerate component pairs contribute
// nothing.
class FisherZOracle : public CiOracle {
public:
    FisherZOracle(Dataset d, double alpha);

    double alpha() const { return alpha_; }

protected:
    bool query_impl(const CiQuery& q) const override;

private:
    Dataset data_;
    double alpha_;
    Eigen::MatrixXd covariance_;
    std::vector<std::vector<int>> groups_;  // singleton groups when ungrouped

    bool grouped_query(const CiQuery& q) const;
};

}  // namespace causal

#endif  // CAUSAL_FISHERZ_HPP

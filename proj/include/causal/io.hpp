#ifndef CAUSAL_IO_HPP
#define CAUSAL_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "causal/bench.hpp"
#include "causal/fisherz.hpp"

#include <json.hpp>

namespace causal {

// Text graph format:
//   # comment
//   nodes: a,b,c
//   a -> b        (DAG)   /   a -- b   (skeleton)
Dag read_dag(std::istream& in, const std::string& origin = "<stream>");
Dag read_dag_file(const std::filesystem::path& path);
Skeleton read_skeleton(std::istream& in, const std::string& origin = "<stream>");
Skeleton read_skeleton_file(const std::filesystem::path& path);
void write_dag(std::ostream& out, const Dag& g);

// CI-table format:
//   nodes: a,b,c,d
//   a _||_ b | c,d
//   a _||_ b |
CiTable read_ci_table(std::istream& in, const std::string& origin = "<stream>");
CiTable read_ci_table_file(const std::filesystem::path& path);
void write_ci_table(std::ostream& out, const CiTable& table);

// One statement in the CI-table line grammar, against a known universe.
CiQuery parse_ci_statement(const std::string& text, const NodeSet& nodes);

// CSV dataset: header row of column labels, decimal reals.
Dataset read_csv_dataset(std::istream& in, const std::string& origin = "<stream>");
Dataset read_csv_dataset_file(const std::filesystem::path& path);
void write_csv_dataset(std::ostream& out, const Dataset& d);

// Report fragments shared by the CLI and tests.
nlohmann::json dag_to_json(const Dag& g);
nlohmann::json skeleton_to_json(const Skeleton& s);
nlohmann::json assignments_to_json(const std::vector<VConfigAssignment>& assignments,
                                   const NodeSet& nodes);
nlohmann::json discovery_to_json(const DiscoveryResult& r);
nlohmann::json pc_to_json(const PcResult& r);
nlohmann::json sp_to_json(const SpResult& r);
nlohmann::json experiment_to_json(const ExperimentReport& r);
std::string experiment_to_csv(const ExperimentReport& r);

}  // namespace causal

#endif  // CAUSAL_IO_HPP

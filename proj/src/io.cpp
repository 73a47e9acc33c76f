#include "causal/io.hpp"

#include <fstream>
#include <sstream>

#include "causal/rng.hpp"

namespace causal {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

struct GraphLines {
    NodeSet nodes;
    std::vector<std::pair<int, int>> edges;
};

// Shared reader for the DAG / skeleton formats; `arrow` is "->" or "--".
GraphLines read_graph_lines(std::istream& in, const std::string& arrow,
                            const std::string& origin) {
    std::string line;
    int line_no = 0;
    bool have_nodes = false;
    NodeSet nodes;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        if (!have_nodes) {
            if (text.rfind("nodes:", 0) != 0)
                throw parse_error(origin + ": expected 'nodes:' declaration first", line_no);
            auto labels = split(text.substr(6), ',');
            if (labels.size() == 1 && labels[0].empty())
                throw parse_error(origin + ": empty node list", line_no);
            try {
                nodes = NodeSet(labels);
            } catch (const std::invalid_argument& e) {
                throw parse_error(origin + ": " + e.what(), line_no);
            }
            have_nodes = true;
            continue;
        }
        const auto pos = text.find(arrow);
        if (pos == std::string::npos)
            throw parse_error(origin + ": expected '" + arrow + "' edge", line_no);
        const std::string a = trim(text.substr(0, pos));
        const std::string b = trim(text.substr(pos + arrow.size()));
        try {
            edges.emplace_back(nodes.index_of(a), nodes.index_of(b));
        } catch (const std::invalid_argument& e) {
            throw parse_error(origin + ": " + e.what(), line_no);
        }
    }
    if (!have_nodes) throw parse_error(origin + ": missing 'nodes:' declaration", 0);
    return GraphLines{std::move(nodes), std::move(edges)};
}

template <typename T>
T open_and_read(const std::filesystem::path& path, T (*reader)(std::istream&, const std::string&)) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path.string(), 0);
    return reader(in, path.filename().string());
}

}  // namespace

Dag read_dag(std::istream& in, const std::string& origin) {
    GraphLines g = read_graph_lines(in, "->", origin);
    try {
        return Dag(std::move(g.nodes), std::move(g.edges));
    } catch (const std::invalid_argument& e) {
        throw parse_error(origin + ": " + e.what(), 0);
    }
}

Dag read_dag_file(const std::filesystem::path& path) { return open_and_read(path, read_dag); }

Skeleton read_skeleton(std::istream& in, const std::string& origin) {
    GraphLines g = read_graph_lines(in, "--", origin);
    try {
        return Skeleton(std::move(g.nodes), std::move(g.edges));
    } catch (const std::invalid_argument& e) {
        throw parse_error(origin + ": " + e.what(), 0);
    }
}

Skeleton read_skeleton_file(const std::filesystem::path& path) {
    return open_and_read(path, read_skeleton);
}

void write_dag(std::ostream& out, const Dag& g) {
    out << "nodes: ";
    for (int i = 0; i < g.node_count(); ++i) out << (i ? "," : "") << g.nodes().label(i);
    out << "\n";
    for (auto [tail, head] : g.edges())
        out << g.nodes().label(tail) << " -> " << g.nodes().label(head) << "\n";
}

CiQuery parse_ci_statement(const std::string& text, const NodeSet& nodes) {
    const auto indep = text.find("_||_");
    if (indep == std::string::npos) throw std::invalid_argument("expected '_||_' in statement");
    const auto bar = text.find('|', indep + 4);
    if (bar == std::string::npos)
        throw std::invalid_argument("expected '|' conditioning separator");
    const std::string a = trim(text.substr(0, indep));
    const std::string b = trim(text.substr(indep + 4, bar - indep - 4));
    const std::string cond_text = trim(text.substr(bar + 1));
    NodeMask cond = 0;
    if (!cond_text.empty())
        for (const std::string& label : split(cond_text, ','))
            cond |= mask_bit(nodes.index_of(label));
    return CiQuery::make(nodes.index_of(a), nodes.index_of(b), cond);
}

CiTable read_ci_table(std::istream& in, const std::string& origin) {
    std::string line;
    int line_no = 0;
    bool have_nodes = false;
    NodeSet nodes;
    std::vector<std::string> statements;
    std::vector<int> statement_lines;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        if (!have_nodes) {
            if (text.rfind("nodes:", 0) != 0)
                throw parse_error(origin + ": expected 'nodes:' declaration first", line_no);
            try {
                nodes = NodeSet(split(text.substr(6), ','));
            } catch (const std::invalid_argument& e) {
                throw parse_error(origin + ": " + e.what(), line_no);
            }
            have_nodes = true;
            continue;
        }
        statements.push_back(text);
        statement_lines.push_back(line_no);
    }
    if (!have_nodes) throw parse_error(origin + ": missing 'nodes:' declaration", 0);
    CiTable table(nodes);
    for (std::size_t s = 0; s < statements.size(); ++s) {
        try {
            table.add(parse_ci_statement(statements[s], nodes));
        } catch (const std::invalid_argument& e) {
            throw parse_error(origin + ": " + e.what(), statement_lines[s]);
        }
    }
    return table;
}

CiTable read_ci_table_file(const std::filesystem::path& path) {
    return open_and_read(path, read_ci_table);
}

void write_ci_table(std::ostream& out, const CiTable& table) {
    out << "nodes: ";
    for (int i = 0; i < table.nodes().size(); ++i)
        out << (i ? "," : "") << table.nodes().label(i);
    out << "\n";
    for (const CiQuery& q : table.independencies()) out << render_query(q, table.nodes()) << "\n";
}

Dataset read_csv_dataset(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error(origin + ": empty file", 0);
    NodeSet columns;
    try {
        columns = NodeSet(split(trim(line), ','));
    } catch (const std::invalid_argument& e) {
        throw parse_error(origin + ": " + e.what(), 1);
    }
    std::vector<double> cells;
    int line_no = 1;
    long rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto fields = split(text, ',');
        if (static_cast<int>(fields.size()) != columns.size())
            throw parse_error(origin + ": expected " + std::to_string(columns.size()) +
                                  " fields, got " + std::to_string(fields.size()),
                              line_no);
        for (const std::string& f : fields) {
            try {
                std::size_t used = 0;
                cells.push_back(std::stod(f, &used));
                if (used != f.size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw parse_error(origin + ": bad number '" + f + "'", line_no);
            }
        }
        ++rows;
    }
    Eigen::MatrixXd values(rows, columns.size());
    for (long r = 0; r < rows; ++r)
        for (int c = 0; c < columns.size(); ++c)
            values(r, c) = cells[static_cast<std::size_t>(r) * columns.size() +
                                 static_cast<std::size_t>(c)];
    return Dataset(std::move(columns), std::move(values));
}

Dataset read_csv_dataset_file(const std::filesystem::path& path) {
    return open_and_read(path, read_csv_dataset);
}

void write_csv_dataset(std::ostream& out, const Dataset& d) {
    for (int c = 0; c < d.column_count(); ++c) out << (c ? "," : "") << d.columns().label(c);
    out << "\n";
    std::ostringstream cell;
    cell.precision(17);
    for (long r = 0; r < d.row_count(); ++r) {
        for (int c = 0; c < d.column_count(); ++c) {
            cell.str("");
            cell << d.values()(r, c);
            out << (c ? "," : "") << cell.str();
        }
        out << "\n";
    }
}

nlohmann::json dag_to_json(const Dag& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [tail, head] : g.edges())
        edges.push_back(g.nodes().label(tail) + " -> " + g.nodes().label(head));
    return {{"nodes", g.nodes().labels()}, {"edges", edges}};
}

nlohmann::json skeleton_to_json(const Skeleton& s) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : s.edges()) edges.push_back(s.nodes().label(a) + " -- " + s.nodes().label(b));
    return {{"nodes", s.nodes().labels()}, {"edges", edges}};
}

nlohmann::json assignments_to_json(const std::vector<VConfigAssignment>& assignments,
                                   const NodeSet& nodes) {
    nlohmann::json out = nlohmann::json::array();
    for (const VConfigAssignment& a : assignments) {
        nlohmann::json entry = {{"vconfig", render_vconfig(a.vc, nodes)},
                                {"label", vlabel_name(a.label)}};
        if (a.witness_cond) {
            entry["witness"] = {
                {"separating", nodes.labels_of(*a.witness_cond)},
                {"dependent_with_centre", nodes.labels_of(*a.witness_cond | mask_bit(a.vc.k))}};
        }
        out.push_back(std::move(entry));
    }
    return out;
}

nlohmann::json discovery_to_json(const DiscoveryResult& r) {
    nlohmann::json out{{"status", discovery_status_name(r.status)},
                       {"skeleton", skeleton_to_json(r.skeleton)},
                       {"vconfigs", assignments_to_json(r.assignments, r.skeleton.nodes())},
                       {"oracle", {{"evaluations", r.oracle_evaluations}, {"hits", r.oracle_hits}}}};
    if (r.solution) {
        out["dag"] = dag_to_json(r.solution->dag);
        nlohmann::json layers;
        for (int v = 0; v < r.skeleton.node_count(); ++v)
            layers[r.skeleton.nodes().label(v)] = r.solution->layers[static_cast<std::size_t>(v)];
        out["layers"] = std::move(layers);
    }
    if (r.solution_count != 0 || r.distinct_patterns != 0)
        out["solutions"] = {{"count", r.solution_count},
                            {"distinct_patterns", r.distinct_patterns}};
    if (!r.conflict.empty()) out["conflict"] = r.conflict;
    return out;
}

nlohmann::json pc_to_json(const PcResult& r) {
    const NodeSet& nodes = r.skeleton.nodes();
    nlohmann::json colliders = nlohmann::json::array();
    for (const VConfig& vc : r.colliders) colliders.push_back(render_vconfig(vc, nodes));
    nlohmann::json ambiguous = nlohmann::json::array();
    for (const VConfig& vc : r.ambiguous) ambiguous.push_back(render_vconfig(vc, nodes));
    nlohmann::json out{{"status", "success"},
                       {"skeleton", skeleton_to_json(r.skeleton)},
                       {"colliders", std::move(colliders)},
                       {"ambiguous", std::move(ambiguous)}};
    if (!r.chosen_sepsets.empty()) {
        nlohmann::json sepsets;
        for (const auto& [pair, mask] : r.chosen_sepsets)
            sepsets[nodes.label(pair.first) + "," + nodes.label(pair.second)] =
                nodes.labels_of(mask);
        out["chosen_sepsets"] = std::move(sepsets);
    }
    return out;
}

nlohmann::json sp_to_json(const SpResult& r) {
    nlohmann::json dags = nlohmann::json::array();
    for (const PermutationImap& imap : r.sparsest) {
        nlohmann::json order = nlohmann::json::array();
        for (int v : imap.order) order.push_back(imap.dag.nodes().label(v));
        dags.push_back({{"dag", dag_to_json(imap.dag)},
                        {"edge_count", imap.edge_count},
                        {"first_permutation", std::move(order)}});
    }
    return {{"status", "success"},
            {"smr_holds", r.smr_holds},
            {"min_edge_count", r.min_edge_count},
            {"permutations_scanned", r.permutations_scanned},
            {"sparsest", std::move(dags)}};
}

nlohmann::json experiment_to_json(const ExperimentReport& r) {
    nlohmann::json algorithms = nlohmann::json::array();
    for (Algorithm a : r.config.algorithms) algorithms.push_back(algorithm_name(a));
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json per_row_ms = nlohmann::json::array();
    for (const ReplicationRow& row : r.rows) {
        rows.push_back({{"replication", row.replication},
                        {"seed", row.seed},
                        {"algorithm", algorithm_name(row.algorithm)},
                        {"status", row.status},
                        {"consistent", row.consistent},
                        {"queries", row.queries}});
        per_row_ms.push_back(row.wall_ms);
    }
    nlohmann::json percent;
    for (const auto& [a, pct] : r.consistency_percent) percent[algorithm_name(a)] = pct;
    return {{"header",
             {{"sem", sem_kind_name(r.config.sem.kind)},
              {"mode", r.config.mode == ExperimentMode::Data ? "data" : "oracle"},
              {"algorithms", std::move(algorithms)},
              {"replications", r.config.replications},
              {"samples", r.config.samples},
              {"alpha", r.config.alpha},
              {"master_seed", r.config.master_seed},
              {"generator", Rng::kAlgorithm},
              {"generator_version", Rng::kAlgorithmVersion},
              {"guards",
               {{"subset_search_nodes", kSubsetGuardNodes},
                {"orientation_enumeration_edges", kOrientationGuardEdges},
                {"solver_free_edges", kSolverGuardFreeEdges},
                {"permutation_nodes", kPermutationGuardNodes}}},
              // All timing lives here; drop this one field to compare runs.
              {"timing", {{"total_ms", r.total_wall_ms}, {"per_row_ms", std::move(per_row_ms)}}}}},
            {"truth", dag_to_json(r.truth)},
            {"rows", std::move(rows)},
            {"consistency_percent", std::move(percent)}};
}

std::string experiment_to_csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "# sem=" << sem_kind_name(r.config.sem.kind)
        << " mode=" << (r.config.mode == ExperimentMode::Data ? "data" : "oracle")
        << " replications=" << r.config.replications << " samples=" << r.config.samples
        << " alpha=" << r.config.alpha << " master_seed=" << r.config.master_seed
        << " generator=" << Rng::kAlgorithm << "/" << Rng::kAlgorithmVersion << "\n";
    out << "replication,seed,algorithm,status,consistent,queries\n";
    for (const ReplicationRow& row : r.rows)
        out << row.replication << "," << row.seed << "," << algorithm_name(row.algorithm) << ","
            << row.status << "," << (row.consistent ? 1 : 0) << "," << row.queries << "\n";
    return out.str();
}

}  // namespace causal

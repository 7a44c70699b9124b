#include "mocu/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mocu/version.hpp"

namespace mocu {

namespace {

using nlohmann::json;

std::ofstream open_for_write(const std::string& path, bool append = false) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

void write_header(std::ofstream& out, const std::string& config_json) {
    out << "# mocu-version: " << kVersion << "\n";
    out << "# config: " << config_json << "\n";
}

double parse_double_strict(const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (pos != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

int parse_int_strict(const std::string& text) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = text.find(sep, start);
        parts.push_back(text.substr(start, end - start));
        if (end == std::string::npos) return parts;
        start = end + 1;
    }
}

}  // namespace

NetworkFile load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(path + ": cannot open network file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw LoadError(path + ": " + e.what());
    }

    if (!doc.is_object()) throw LoadError(path + ": top level must be an object");
    for (const auto& [key, value] : doc.items())
        if (key != "genes" && key != "edges" && key != "perturbation")
            throw LoadError(path + ": unknown key '" + key + "'");
    if (!doc.contains("genes") || !doc["genes"].is_array())
        throw LoadError(path + ": 'genes' must be an array of names");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw LoadError(path + ": 'edges' must be an array of objects");
    if (!doc.contains("perturbation") || !doc["perturbation"].is_number())
        throw LoadError(path + ": 'perturbation' must be a number");

    NetworkFile file;
    std::map<std::string, int> index;
    for (const auto& g : doc["genes"]) {
        if (!g.is_string()) throw LoadError(path + ": gene names must be strings");
        const auto name = g.get<std::string>();
        file.network.genes.push_back(name);
        index[name] = static_cast<int>(file.network.genes.size()) - 1;
    }

    for (const auto& e : doc["edges"]) {
        if (!e.is_object()) throw LoadError(path + ": edges must be objects");
        for (const auto& [key, value] : e.items())
            if (key != "source" && key != "target" && key != "sign")
                throw LoadError(path + ": unknown edge key '" + key + "'");
        for (const char* key : {"source", "target", "sign"})
            if (!e.contains(key) || !e[key].is_string())
                throw LoadError(path + ": edge field '" + std::string(key) +
                                "' must be a string");
        const auto gene_index = [&](const char* field) {
            const auto name = e[field].get<std::string>();
            const auto it = index.find(name);
            if (it == index.end())
                throw LoadError(path + ": edge names unknown gene '" + name + "'");
            return it->second;
        };
        Edge edge;
        edge.source = gene_index("source");
        edge.target = gene_index("target");
        const auto sign = e["sign"].get<std::string>();
        if (sign == "activating")
            edge.sign = EdgeSign::Activating;
        else if (sign == "suppressing")
            edge.sign = EdgeSign::Suppressing;
        else if (sign == "unknown")
            edge.sign = EdgeSign::Unknown;
        else
            throw LoadError(path + ": invalid edge sign '" + sign + "'");
        file.network.edges.push_back(edge);
    }

    file.perturbation = doc["perturbation"].get<double>();
    if (!(file.perturbation > 0.0 && file.perturbation < 1.0))
        throw LoadError(path + ": perturbation must lie in (0, 1)");
    try {
        file.network.validate();
    } catch (const std::invalid_argument& e) {
        throw LoadError(path + ": " + e.what());
    }
    return file;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty grid specification");
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("range grid must be start:stop:step");
        const double start = parse_double_strict(parts[0]);
        const double stop = parse_double_strict(parts[1]);
        const double step = parse_double_strict(parts[2]);
        if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
        if (stop < start - 1e-12)
            throw std::invalid_argument("grid stop must be >= start");
        const auto count =
            static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i)
            values[i] = start + static_cast<double>(i) * step;
        return values;
    }
    std::vector<double> values;
    for (const auto& part : split(text, ','))
        values.push_back(parse_double_strict(part));
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer list");
    const std::size_t dash = text.find('-', 1);  // position 0 would be a sign
    if (dash != std::string::npos && text.find(',') == std::string::npos) {
        const int lo = parse_int_strict(text.substr(0, dash));
        const int hi = parse_int_strict(text.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("range must be ascending: " + text);
        std::vector<int> values;
        values.reserve(static_cast<std::size_t>(hi - lo) + 1);
        for (int v = lo; v <= hi; ++v) values.push_back(v);
        return values;
    }
    std::vector<int> values;
    for (const auto& part : split(text, ','))
        values.push_back(parse_int_strict(part));
    return values;
}

CsvMetadata read_csv_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvMetadata meta;
    std::string line;
    const std::string version_tag = "# mocu-version: ";
    const std::string config_tag = "# config: ";
    if (!std::getline(in, line) || line.rfind(version_tag, 0) != 0)
        throw std::runtime_error(path + ": missing version header");
    meta.version = line.substr(version_tag.size());
    if (!std::getline(in, line) || line.rfind(config_tag, 0) != 0)
        throw std::runtime_error(path + ": missing config header");
    meta.config_json = line.substr(config_tag.size());
    return meta;
}

void write_case_csv(const std::string& path, const CaseTable& table,
                    const std::string& config_json) {
    auto out = open_for_write(path);
    write_header(out, config_json);
    out << table.coord1_name << ',' << table.coord2_name
        << ",eta_multi,theta_samples,lambda_grid,seed\n";
    for (const auto& row : table.rows)
        out << format_double(row.coord1) << ',' << format_double(row.coord2) << ','
            << format_double(row.eta_multi) << ',' << row.theta_samples << ','
            << row.lambda_grid << ',' << row.seed << '\n';
}

void write_g_curve_csv(const std::string& path, std::span<const GCurveSample> samples,
                       const std::string& config_json) {
    auto out = open_for_write(path);
    write_header(out, config_json);
    out << "lambda,x,g\n";
    for (const auto& s : samples)
        out << format_double(s.lambda) << ',' << format_double(s.x) << ','
            << format_double(s.g) << '\n';
}

void write_runs_csv(const std::string& path, std::span<const RunRecord> records,
                    const std::string& config_json) {
    auto out = open_for_write(path);
    write_header(out, config_json);
    out << "k,run,seed,eta_multi\n";
    for (const auto& r : records)
        out << r.k << ',' << r.run << ',' << r.seed << ','
            << format_double(r.eta_multi) << '\n';
}

void write_summary_csv(const std::string& path, std::span<const KSummary> summaries,
                       const std::string& config_json) {
    auto out = open_for_write(path);
    write_header(out, config_json);
    out << "k,min,median,mean,mean_plus_std,runs\n";
    for (const auto& s : summaries)
        out << s.k << ',' << format_double(s.min) << ',' << format_double(s.median)
            << ',' << format_double(s.mean) << ',' << format_double(s.mean_plus_std)
            << ',' << s.runs << '\n';
}

void write_steady_csv(const std::string& path, std::span<const SteadyRow> rows,
                      const std::string& config_json) {
    auto out = open_for_write(path);
    write_header(out, config_json);
    out << "intervention,edge,source,target,pi_u,pi_p,residual,iterations,method\n";
    for (const auto& r : rows)
        out << r.intervention << ',' << r.edge << ',' << r.source << ',' << r.target
            << ',' << format_double(r.pi_u) << ',' << format_double(r.pi_p) << ','
            << format_double(r.residual) << ',' << r.iterations << ',' << r.method
            << '\n';
}

void write_grn_report_json(const std::string& path, const GrnReport& report) {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = json::parse(report.config_json);
    doc["diagnostics"] = {{"lambda_method", report.lambda_method},
                          {"lambda_nodes", report.lambda_nodes},
                          {"solver_method", report.solver_method},
                          {"solver_tol", report.solver_tol},
                          {"cache_hits", report.cache.hits},
                          {"cache_misses", report.cache.misses}};
    json rows = json::array();
    for (const auto& s : report.summaries)
        rows.push_back({{"k", s.k},
                        {"min", s.min},
                        {"median", s.median},
                        {"mean", s.mean},
                        {"mean_plus_std", s.mean_plus_std},
                        {"runs", s.runs}});
    doc["summaries"] = rows;
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
}

CheckpointWriter::CheckpointWriter(const std::string& path,
                                   const std::string& config_json, bool resume) {
    out_ = open_for_write(path, resume);
    if (!resume) {
        out_ << json{{"config", json::parse(config_json)}}.dump() << '\n';
        out_.flush();
    }
}

void CheckpointWriter::append(const RunRecord& record) {
    out_ << json{{"k", record.k},
                 {"run", record.run},
                 {"seed", record.seed},
                 {"eta_multi", record.eta_multi}}
                .dump()
         << '\n';
    out_.flush();
}

Checkpoint load_checkpoint(const std::string& path) {
    Checkpoint cp;
    if (!std::filesystem::exists(path)) return cp;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json row;
        try {
            row = json::parse(line);
        } catch (const json::exception&) {
            break;  // torn trailing line from an interrupted write
        }
        if (!have_header) {
            if (!row.contains("config"))
                throw std::runtime_error(path + ": checkpoint missing config header");
            cp.config_json = row["config"].dump();
            have_header = true;
            continue;
        }
        if (!row.contains("k") || !row.contains("run") || !row.contains("seed") ||
            !row.contains("eta_multi"))
            break;
        cp.records.push_back({row["k"].get<int>(), row["run"].get<int>(),
                              row["seed"].get<std::uint64_t>(),
                              row["eta_multi"].get<double>()});
    }
    return cp;
}

}  // namespace mocu

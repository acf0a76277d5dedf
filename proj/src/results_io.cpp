// results_io.cpp — CSV writer/reader and metadata sidecar

#include "qfridge/results_io.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace qfridge {

namespace {

struct Column {
    std::string name;
    std::function<std::string(const ResultRow&)> get;
    std::function<void(ResultRow&, const std::string&)> set;
};

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw std::runtime_error("csv: malformed number '" + s + "'");
    return v;
}

Column opt_column(std::string name, std::function<std::optional<double>&(ResultRow&)> ref)
{
    return {std::move(name),
            [ref](const ResultRow& r) {
                const auto& v = ref(const_cast<ResultRow&>(r));
                return v ? format_double(*v) : std::string();
            },
            [ref](ResultRow& r, const std::string& s) {
                if (s.empty()) ref(r).reset();
                else ref(r) = parse_double(s);
            }};
}

Column flag_column(std::string name, std::optional<bool> ResultRow::*member)
{
    return {std::move(name),
            [member](const ResultRow& r) {
                const auto& v = r.*member;
                return v ? std::string(*v ? "1" : "0") : std::string();
            },
            [member](ResultRow& r, const std::string& s) {
                if (s.empty()) (r.*member).reset();
                else if (s == "1" || s == "0") r.*member = s == "1";
                else throw std::runtime_error("csv: malformed flag '" + s + "'");
            }};
}

Column text_column(std::string name, std::string ResultRow::*member)
{
    return {std::move(name), [member](const ResultRow& r) { return r.*member; },
            [member](ResultRow& r, const std::string& s) { r.*member = s; }};
}

#define QF_OPT(label, expr) opt_column(label, [](ResultRow& r) -> std::optional<double>& { return expr; })

const std::vector<Column>& columns()
{
    static const std::vector<Column> cols = [] {
        std::vector<Column> c;
        c.push_back({"index", [](const ResultRow& r) { return std::to_string(r.index); },
                     [](ResultRow& r, const std::string& s) { r.index = std::stoul(s); }});
        c.push_back(text_column("name", &ResultRow::name));
        c.push_back(text_column("interaction", &ResultRow::interaction));
        c.push_back(text_column("mode", &ResultRow::mode));
        c.push_back(text_column("method", &ResultRow::method));
        c.push_back(text_column("measure", &ResultRow::measure));
        for (std::size_t k = 0; k < kMaxSites; ++k) {
            const std::string n = std::to_string(k + 1);
            c.push_back(opt_column("j" + n, [k](ResultRow& r) -> std::optional<double>& { return r.spin[k]; }));
        }
        for (std::size_t k = 0; k < kMaxSites; ++k) {
            const std::string n = std::to_string(k + 1);
            c.push_back(opt_column("h" + n, [k](ResultRow& r) -> std::optional<double>& { return r.field[k]; }));
        }
        for (std::size_t k = 0; k < kMaxSites; ++k) {
            const std::string n = std::to_string(k + 1);
            c.push_back(opt_column("T" + n + "_0", [k](ResultRow& r) -> std::optional<double>& { return r.t_initial[k]; }));
        }
        c.push_back(QF_OPT("J", r.coupling));
        c.push_back(QF_OPT("gamma", r.gamma));
        c.push_back(QF_OPT("delta", r.delta));
        c.push_back(QF_OPT("phi", r.phi));
        c.push_back(QF_OPT("Gamma", r.rate));
        c.push_back(QF_OPT("alpha", r.alpha));
        for (std::size_t k = 0; k < kMaxSites; ++k) {
            for (std::size_t m = 0; m < kMeasureCount; ++m) {
                const std::string label = "T" + std::to_string(k + 1) + "_s_" +
                                          std::string(to_string(static_cast<DistanceMeasure>(m)));
                c.push_back(opt_column(label, [k, m](ResultRow& r) -> std::optional<double>& { return r.t_steady[k][m]; }));
            }
        }
        c.push_back(QF_OPT("S_N", r.entropy_normalized));
        for (std::size_t k = 0; k < kMaxSites; ++k) {
            c.push_back(opt_column("Q" + std::to_string(k + 1), [k](ResultRow& r) -> std::optional<double>& { return r.heat[k]; }));
        }
        c.push_back(QF_OPT("W", r.work));
        c.push_back(QF_OPT("S_dot", r.entropy_rate));
        c.push_back(QF_OPT("Sigma_dot", r.entropy_production));
        c.push_back(QF_OPT("eta", r.eta));
        c.push_back({"converged", [](const ResultRow& r) { return std::string(r.converged ? "1" : "0"); },
                     [](ResultRow& r, const std::string& s) { r.converged = s == "1"; }});
        c.push_back(QF_OPT("residual", r.residual));
        c.push_back(QF_OPT("t_steady", r.steady_time));
        c.push_back(flag_column("q1_positive", &ResultRow::q1_positive));
        c.push_back(flag_column("q2_negative", &ResultRow::q2_negative));
        c.push_back(flag_column("w_positive", &ResultRow::w_positive));
        c.push_back(flag_column("sigma_nonneg", &ResultRow::sigma_nonneg));
        c.push_back(flag_column("cooling", &ResultRow::cooling));
        c.push_back(text_column("error", &ResultRow::error));
        return c;
    }();
    return cols;
}

#undef QF_OPT

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

// RFC 4180 records; returns false at end of input.
bool next_record(const std::string& text, std::size_t& pos, std::vector<std::string>& fields)
{
    fields.clear();
    if (pos >= text.size()) return false;
    std::string cell;
    bool quoted = false;
    while (pos < text.size()) {
        const char ch = text[pos++];
        if (quoted) {
            if (ch == '"') {
                if (pos < text.size() && text[pos] == '"') {
                    cell += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cell));
            cell.clear();
        } else if (ch == '\n') {
            break;
        } else {
            cell += ch;
        }
    }
    if (quoted) throw std::runtime_error("csv: unterminated quoted field");
    fields.push_back(std::move(cell));
    return true;
}

} // namespace

std::vector<std::string> result_columns()
{
    std::vector<std::string> names;
    for (const Column& c : columns()) names.push_back(c.name);
    return names;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows)
{
    const auto& cols = columns();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k].name;
    out << '\n';
    for (const ResultRow& row : rows) {
        for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << quote(cols[k].get(row));
        out << '\n';
    }
}

std::string to_csv(const std::vector<ResultRow>& rows)
{
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

std::vector<ResultRow> parse_csv(const std::string& text)
{
    const auto& cols = columns();
    std::size_t pos = 0;
    std::vector<std::string> fields;
    if (!next_record(text, pos, fields)) throw std::runtime_error("csv: empty input");
    if (fields != result_columns()) throw std::runtime_error("csv: header does not match the result schema");
    std::vector<ResultRow> rows;
    while (next_record(text, pos, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != cols.size()) throw std::runtime_error("csv: wrong number of fields in a row");
        ResultRow row;
        for (std::size_t k = 0; k < cols.size(); ++k) cols[k].set(row, fields[k]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string config_hash(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_results(const std::vector<ResultRow>& rows, const std::string& path, const ExperimentConfig& config)
{
    if (rows.empty()) throw std::invalid_argument("write_results: no rows");
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
        write_csv(out, rows);
        if (!out) throw std::runtime_error("write to '" + path + "' failed");
    }
    nlohmann::ordered_json meta;
    meta["tool"] = "qfridge";
    meta["version"] = kToolVersion;
    meta["name"] = config.name;
    meta["config_hash"] = config_hash(config.source_text);
    meta["rows"] = rows.size();
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["written_at"] = stamp;
    std::vector<double> wall;
    for (const ResultRow& r : rows) wall.push_back(r.wall_seconds);
    meta["wall_seconds"] = wall;
    std::ofstream out(path + ".meta.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + ".meta.json' for writing");
    out << meta.dump(2) << '\n';
}

std::vector<ResultRow> read_results(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

} // namespace qfridge

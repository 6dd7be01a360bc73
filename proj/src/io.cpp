// SPDX-License-Identifier: Apache-2.0
#include "partsim/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace partsim {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line);
    return value;
}

double parse_double(const std::string& tok, std::size_t line, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line);
    return value;
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t) toks.push_back(std::move(t));
    return toks;
}

}  // namespace

// --- Chaco -------------------------------------------------------------------

Graph read_chaco(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    // header (skip % comment lines)
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        header = split_tokens(line);
        break;
    }
    if (header.size() < 2) throw ParseError("missing Chaco header", lineno);
    std::uint64_t n = parse_uint(header[0], lineno, "vertex count");
    std::uint64_t m = parse_uint(header[1], lineno, "edge count");
    std::string fmt = header.size() > 2 ? header[2] : "000";
    bool edge_weights = !fmt.empty() && fmt.back() == '1';
    bool vertex_weights = fmt.size() >= 2 && fmt[fmt.size() - 2] == '1';

    Graph g;
    for (std::uint64_t i = 0; i < n; ++i) g.add_vertex();

    std::uint64_t kept_edges = 0;
    std::uint64_t adjacency_entries = 0;
    for (std::uint64_t u = 1; u <= n; ++u) {
        std::vector<std::string> toks;
        if (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '%') {
                --u;
                continue;
            }
            toks = split_tokens(line);
        }
        std::size_t idx = 0;
        if (vertex_weights) {
            if (idx >= toks.size()) throw ParseError("missing vertex weight", lineno);
            g.vertex(static_cast<VertexId>(u - 1)).properties["vweight"] =
                parse_double(toks[idx++], lineno, "vertex weight");
        }
        while (idx < toks.size()) {
            std::uint64_t v = parse_uint(toks[idx++], lineno, "neighbor index");
            if (v < 1 || v > n) throw ParseError("neighbor index out of range", lineno);
            double w = 1.0;
            if (edge_weights) {
                if (idx >= toks.size()) throw ParseError("missing edge weight", lineno);
                w = parse_double(toks[idx++], lineno, "edge weight");
                if (!(w > 0.0) || w > 1.0) throw ParseError("edge weight outside (0,1]", lineno);
            }
            ++adjacency_entries;
            if (u < v) {
                g.add_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w);
                ++kept_edges;
            } else if (u == v) {
                throw ParseError("self-loops are not supported in Chaco files", lineno);
            }
        }
    }
    if (kept_edges != m || adjacency_entries != 2 * m)
        throw ParseError("edge count mismatch between header and body", lineno);
    return g;
}

void write_chaco(const Graph& g, std::ostream& out) {
    UndirectedView uv(g);
    bool weighted = false;
    for (VertexId v = 0; v < uv.num_vertices(); ++v)
        for (const auto& inc : uv.incidences(v)) {
            if (inc.neighbor == v)
                throw std::invalid_argument("self-loops are not supported in Chaco files");
            if (inc.weight != 1.0) weighted = true;
        }
    out << uv.num_vertices() << ' ' << uv.num_pairs() << ' ' << (weighted ? "001" : "000") << '\n';
    for (VertexId v = 0; v < uv.num_vertices(); ++v) {
        bool first = true;
        for (const auto& inc : uv.incidences(v)) {
            if (!first) out << ' ';
            first = false;
            out << (inc.neighbor + 1);
            if (weighted) out << ' ' << format_double(inc.weight);
        }
        out << '\n';
    }
}

// --- GML ---------------------------------------------------------------------

namespace {

struct GmlToken {
    enum Type { Word, Number, String, Open, Close, End } type = End;
    std::string text;
    std::size_t line = 0;
};

class GmlLexer {
  public:
    explicit GmlLexer(std::istream& in) : in_(in) {}

    GmlToken next() {
        int c;
        while ((c = in_.get()) != EOF) {
            if (c == '\n') ++line_;
            if (std::isspace(c)) continue;
            if (c == '#') {  // comment to end of line
                while ((c = in_.get()) != EOF && c != '\n') {
                }
                ++line_;
                continue;
            }
            break;
        }
        if (c == EOF) return {GmlToken::End, "", line_};
        if (c == '[') return {GmlToken::Open, "[", line_};
        if (c == ']') return {GmlToken::Close, "]", line_};
        if (c == '"') {
            std::string s;
            while ((c = in_.get()) != EOF && c != '"') s.push_back(static_cast<char>(c));
            if (c == EOF) throw ParseError("unterminated string", line_);
            return {GmlToken::String, s, line_};
        }
        std::string s(1, static_cast<char>(c));
        while ((c = in_.peek()) != EOF && !std::isspace(c) && c != '[' && c != ']')
            s.push_back(static_cast<char>(in_.get()));
        bool numeric = s.find_first_not_of("+-.0123456789eE") == std::string::npos &&
                       s.find_first_of("0123456789") != std::string::npos;
        return {numeric ? GmlToken::Number : GmlToken::Word, s, line_};
    }

  private:
    std::istream& in_;
    std::size_t line_ = 1;
};

struct GmlEntity {
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
};

GmlEntity parse_gml_block(GmlLexer& lex, std::size_t line) {
    GmlEntity ent;
    for (;;) {
        GmlToken key = lex.next();
        if (key.type == GmlToken::Close) return ent;
        if (key.type != GmlToken::Word)
            throw ParseError("expected key or ']' in GML block", key.line);
        GmlToken val = lex.next();
        if (val.type == GmlToken::Number)
            ent.numbers[key.text] = parse_double(val.text, val.line, "number");
        else if (val.type == GmlToken::String)
            ent.strings[key.text] = val.text;
        else if (val.type == GmlToken::Open)
            parse_gml_block(lex, val.line);  // nested unknown block: consume and drop
        else
            throw ParseError("expected value for key '" + key.text + "'", val.line);
    }
    throw ParseError("unterminated GML block", line);
}

}  // namespace

Graph read_gml(std::istream& in) { return read_gml(in, nullptr); }

Graph read_gml(std::istream& in, PartitionMap* partitions) {
    GmlLexer lex(in);
    GmlToken tok = lex.next();
    if (tok.type != GmlToken::Word || tok.text != "graph")
        throw ParseError("expected top-level 'graph'", tok.line);
    tok = lex.next();
    if (tok.type != GmlToken::Open) throw ParseError("expected '[' after 'graph'", tok.line);

    Graph g;
    std::map<std::uint64_t, VertexId> id_map;
    std::vector<std::optional<PartitionId>> node_partitions;
    std::uint32_t declared_k = 0;
    struct PendingEdge {
        std::uint64_t source, target;
        double weight;
        std::string label;
        PropertyMap props;
        std::size_t line;
    };
    std::vector<PendingEdge> pending;

    for (;;) {
        tok = lex.next();
        if (tok.type == GmlToken::Close) break;
        if (tok.type == GmlToken::End) throw ParseError("unterminated graph block", tok.line);
        if (tok.type != GmlToken::Word) throw ParseError("expected key in graph block", tok.line);
        if (tok.text == "node" || tok.text == "edge") {
            GmlToken open = lex.next();
            if (open.type != GmlToken::Open)
                throw ParseError("expected '[' after '" + tok.text + "'", open.line);
            GmlEntity ent = parse_gml_block(lex, open.line);
            if (tok.text == "node") {
                auto it = ent.numbers.find("id");
                if (it == ent.numbers.end()) throw ParseError("node without id", open.line);
                auto gml_id = static_cast<std::uint64_t>(it->second);
                if (id_map.contains(gml_id)) throw ParseError("duplicate node id", open.line);
                VertexKind kind = VertexKind::Plain;
                if (auto k = ent.strings.find("kind"); k != ent.strings.end())
                    kind = vertex_kind_from_string(k->second);
                PropertyMap props;
                std::optional<PartitionId> part;
                for (const auto& [key, value] : ent.numbers) {
                    if (key == "id") continue;
                    if (key == "partition")
                        part = static_cast<PartitionId>(value);
                    else
                        props[key] = value;
                }
                id_map[gml_id] = g.add_vertex(kind, std::move(props));
                node_partitions.push_back(part);
            } else {
                PendingEdge e{0, 0, 1.0, "", {}, open.line};
                for (const auto& [key, value] : ent.numbers) {
                    if (key == "source")
                        e.source = static_cast<std::uint64_t>(value);
                    else if (key == "target")
                        e.target = static_cast<std::uint64_t>(value);
                    else if (key == "weight")
                        e.weight = value;
                    else
                        e.props[key] = value;
                }
                if (!ent.numbers.contains("source") || !ent.numbers.contains("target"))
                    throw ParseError("edge without source/target", open.line);
                if (auto l = ent.strings.find("label"); l != ent.strings.end()) e.label = l->second;
                pending.push_back(std::move(e));
            }
        } else {
            GmlToken val = lex.next();
            if (val.type == GmlToken::Open) {
                parse_gml_block(lex, val.line);
            } else if (val.type == GmlToken::Number && tok.text == "partitions") {
                declared_k = static_cast<std::uint32_t>(parse_double(val.text, val.line, "number"));
            } else if (val.type != GmlToken::Number && val.type != GmlToken::String) {
                throw ParseError("expected value for key '" + tok.text + "'", val.line);
            }
        }
    }

    for (const PendingEdge& e : pending) {
        auto s = id_map.find(e.source);
        auto t = id_map.find(e.target);
        if (s == id_map.end() || t == id_map.end())
            throw ParseError("edge references unknown node", e.line);
        g.add_edge(s->second, t->second, e.weight, e.label, e.props);
    }

    if (partitions) {
        std::uint32_t k = declared_k;
        bool any = false;
        for (const auto& part : node_partitions)
            if (part) {
                any = true;
                k = std::max(k, *part + 1);
            }
        if (any || declared_k > 0) {
            *partitions = PartitionMap(g.num_vertices(), std::max(k, 1u));
            for (VertexId v = 0; v < node_partitions.size(); ++v)
                if (node_partitions[v]) partitions->assign(v, *node_partitions[v]);
        }
    }
    return g;
}

void write_gml(const Graph& g, std::ostream& out, const PartitionMap* partitions) {
    out << "graph [\n";
    out << "  directed 1\n";
    if (partitions) out << "  partitions " << partitions->k() << '\n';
    for (const Vertex& v : g.vertices()) {
        out << "  node [\n";
        out << "    id " << v.id << '\n';
        if (v.kind != VertexKind::Plain) out << "    kind \"" << to_string(v.kind) << "\"\n";
        if (partitions) out << "    partition " << (*partitions)[v.id] << '\n';
        for (const auto& [key, value] : v.properties)
            out << "    " << key << ' ' << format_double(value) << '\n';
        out << "  ]\n";
    }
    for (const Edge& e : g.edges()) {
        out << "  edge [\n";
        out << "    source " << e.start << '\n';
        out << "    target " << e.end << '\n';
        out << "    weight " << format_double(e.weight) << '\n';
        if (!e.label.empty()) out << "    label \"" << e.label << "\"\n";
        for (const auto& [key, value] : e.properties)
            out << "    " << key << ' ' << format_double(value) << '\n';
        out << "  ]\n";
    }
    out << "]\n";
}

// --- Operation logs ------------------------------------------------------------

const char* to_string(OpKind k) {
    switch (k) {
        case OpKind::FsBfs: return "FS_BFS";
        case OpKind::GisAstarShort: return "GIS_ASTAR_SHORT";
        case OpKind::GisAstarLong: return "GIS_ASTAR_LONG";
        case OpKind::SocialFoaf: return "SOCIAL_FOAF";
    }
    return "FS_BFS";
}

OpKind op_kind_from_string(const std::string& s) {
    if (s == "FS_BFS") return OpKind::FsBfs;
    if (s == "GIS_ASTAR_SHORT") return OpKind::GisAstarShort;
    if (s == "GIS_ASTAR_LONG") return OpKind::GisAstarLong;
    if (s == "SOCIAL_FOAF") return OpKind::SocialFoaf;
    throw std::invalid_argument("unknown operation kind: " + s);
}

void write_operation_log(const OperationLog& log, std::ostream& out) {
    out << "seed " << log.seed << '\n';
    for (const OperationRecord& r : log.records) {
        out << r.seq << ' ' << to_string(r.kind) << ' ' << r.start;
        if (r.kind != OpKind::SocialFoaf) out << ' ' << r.end;
        out << '\n';
    }
}

OperationLog read_operation_log(std::istream& in) {
    OperationLog log;
    std::string line;
    std::size_t lineno = 0;
    if (std::getline(in, line)) {
        ++lineno;
        auto toks = split_tokens(line);
        if (toks.size() != 2 || toks[0] != "seed")
            throw ParseError("expected 'seed <value>' header", lineno);
        log.seed = parse_uint(toks[1], lineno, "seed");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto toks = split_tokens(line);
        if (toks.size() < 3) throw ParseError("malformed operation record", lineno);
        OperationRecord r;
        r.seq = parse_uint(toks[0], lineno, "sequence number");
        try {
            r.kind = op_kind_from_string(toks[1]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
        r.start = static_cast<VertexId>(parse_uint(toks[2], lineno, "start vertex"));
        if (r.kind != OpKind::SocialFoaf) {
            if (toks.size() != 4) throw ParseError("malformed operation record", lineno);
            r.end = static_cast<VertexId>(parse_uint(toks[3], lineno, "end vertex"));
        } else if (toks.size() != 3) {
            throw ParseError("malformed operation record", lineno);
        }
        log.records.push_back(r);
    }
    return log;
}

// --- Dynamism logs --------------------------------------------------------------

void write_dynamism_log(const DynamismLog& log, std::ostream& out) {
    out << "seed " << log.seed << '\n';
    for (const DynamismRecord& r : log.records)
        out << r.seq << ' ' << r.vertex << ' ' << r.target << '\n';
}

DynamismLog read_dynamism_log(std::istream& in) {
    DynamismLog log;
    std::string line;
    std::size_t lineno = 0;
    if (std::getline(in, line)) {
        ++lineno;
        auto toks = split_tokens(line);
        if (toks.size() != 2 || toks[0] != "seed")
            throw ParseError("expected 'seed <value>' header", lineno);
        log.seed = parse_uint(toks[1], lineno, "seed");
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto toks = split_tokens(line);
        if (toks.size() != 3) throw ParseError("malformed dynamism record", lineno);
        DynamismRecord r;
        r.seq = parse_uint(toks[0], lineno, "sequence number");
        r.vertex = static_cast<VertexId>(parse_uint(toks[1], lineno, "vertex id"));
        r.target = static_cast<PartitionId>(parse_uint(toks[2], lineno, "target partition"));
        log.records.push_back(r);
    }
    return log;
}

// --- Partition maps --------------------------------------------------------------

void write_partition_map(const PartitionMap& p, std::ostream& out) {
    out << "k " << p.k() << '\n';
    for (PartitionId pid : p.assignments()) out << pid << '\n';
}

PartitionMap read_partition_map(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty partition map file", lineno);
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.size() != 2 || toks[0] != "k")
        throw ParseError("expected 'k <count>' header", lineno);
    auto k = static_cast<std::uint32_t>(parse_uint(toks[1], lineno, "partition count"));
    std::vector<PartitionId> ids;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto id = static_cast<PartitionId>(parse_uint(line, lineno, "partition id"));
        if (id >= k) throw ParseError("partition id out of range", lineno);
        ids.push_back(id);
    }
    PartitionMap p(ids.size(), k);
    for (VertexId v = 0; v < ids.size(); ++v) p.assign(v, ids[v]);
    return p;
}

// --- Metrics CSV -------------------------------------------------------------------

void write_metrics_csv(const std::vector<MetricsRow>& rows, std::ostream& out) {
    out << "experiment,dataset,method,k,dynamism_level,sample,"
           "edge_cut_weight,edge_cut_fraction,conductance,modularity,partition_size_stdev,"
           "cov_vertices,cov_edges,cov_traffic,pct_global,"
           "total_traffic,local_traffic,global_traffic\n";
    for (const MetricsRow& r : rows) {
        out << r.experiment << ',' << r.dataset << ',' << r.method << ',' << r.k << ','
            << format_double(r.dynamism_level) << ',' << r.sample << ','
            << format_double(r.edge_cut_weight) << ',' << format_double(r.edge_cut_fraction) << ','
            << format_double(r.conductance) << ',' << format_double(r.modularity) << ','
            << format_double(r.partition_size_stdev) << ',' << format_double(r.cov_vertices) << ','
            << format_double(r.cov_edges) << ',' << format_double(r.cov_traffic) << ','
            << format_double(r.pct_global) << ',' << r.total_traffic << ',' << r.local_traffic
            << ',' << r.global_traffic << '\n';
    }
}

void write_op_traffic_csv(const std::vector<OpTrafficSample>& samples, std::ostream& out) {
    out << "seq,local,global,pct_global\n";
    for (const OpTrafficSample& s : samples) {
        std::uint64_t total = s.local + s.global;
        out << s.seq << ',' << s.local << ',' << s.global << ','
            << format_double(total ? static_cast<double>(s.global) / static_cast<double>(total)
                                   : 0.0)
            << '\n';
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (path.ends_with(".gml")) return read_gml(in);
    return read_chaco(in);
}

void write_graph_file(const Graph& g, const std::string& path, const PartitionMap* partitions) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (path.ends_with(".gml"))
        write_gml(g, out, partitions);
    else
        write_chaco(g, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace partsim

#include "torface/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace torface {

using nlohmann::json;

static json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for the diagnostic
        int line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError(std::string(e.what()), line);
    }
}

static std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static IVec to_ivec(const json& a) {
    IVec v;
    for (auto& x : a) v.push_back(x.get<i64>());
    return v;
}

Input parse_input(const std::string& text) {
    json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("top level must be an object");
    if (doc.contains("schema") && doc["schema"].get<int>() != 1)
        throw ParseError("unsupported schema version");

    RawComplex raw;
    if (!doc.contains("cells")) throw ParseError("missing 'cells' section");
    for (auto& c : doc["cells"])
        raw.cells.push_back({c.at("id").get<std::string>(), c.at("dim").get<int>()});
    for (auto& p : doc.value("order", json::array()))
        raw.order.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    for (auto& e : doc.value("incidence", json::array()))
        raw.incidence.push_back(
            {e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<int>()});
    CellComplex cc = CellComplex::validate(raw);

    std::vector<AffineSemigroup> sgs;
    json sgdoc = doc.value("semigroups", json::object());
    for (int c = 0; c < cc.size(); ++c) {
        int rank = cc.dim(c) + 1;
        std::vector<IVec> gens;
        if (sgdoc.contains(cc.name(c)))
            for (auto& g : sgdoc[cc.name(c)].at("generators")) gens.push_back(to_ivec(g));
        else if (rank > 0)
            throw ValidationError("RankMismatch", "no semigroup given for cell '" + cc.name(c) + "'");
        sgs.emplace_back(rank, std::move(gens));
    }

    std::vector<std::tuple<int, int, IMat>> embeds;
    for (auto& e : doc.value("embeddings", json::array())) {
        int lo = cc.cell_by_name(e.at("lower").get<std::string>());
        int hi = cc.cell_by_name(e.at("upper").get<std::string>());
        auto rows = e.at("matrix");
        IMat m((int)rows.size(), rows.empty() ? cc.dim(lo) + 1 : (int)rows[0].size());
        for (int i = 0; i < m.rows; ++i) {
            if ((int)rows[(size_t)i].size() != m.cols)
                throw ParseError("ragged embedding matrix for '" + cc.name(lo) + "' -> '" +
                                 cc.name(hi) + "'");
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[(size_t)i][(size_t)j].get<i64>();
        }
        embeds.push_back({lo, hi, std::move(m)});
    }

    Input in;
    in.name = doc.value("name", std::string());
    in.ring = std::make_unique<ToricFaceRing>(
        ToricFaceRing::validate_monoidal(std::move(cc), std::move(sgs), embeds));
    for (auto& l : doc.value("labels", json::array())) {
        int cell = in.ring->complex().cell_by_name(l.at("cell").get<std::string>());
        DegreeElem d = in.ring->canonicalize(cell, to_ivec(l.at("coords")));
        in.labels.push_back({d, l.at("name").get<std::string>()});
    }
    return in;
}

Input load_input(const std::string& path) { return parse_input(read_file(path)); }

static Rat to_rat(const json& v) {
    if (v.is_number_integer()) return Rat(v.get<i64>());
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat((i128)std::stoll(s.substr(0, slash)), (i128)std::stoll(s.substr(slash + 1)));
}

BoxedModule load_module(const std::string& path, const ToricFaceRing& r, int window) {
    json doc = parse_json(read_file(path));
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "ring") return ring_module(r, window);
    if (kind == "quotient")
        return quotient_module(r, r.complex().cell_by_name(doc.at("cell").get<std::string>()),
                               window);
    if (kind == "prime")
        return prime_module(r, r.complex().cell_by_name(doc.at("cell").get<std::string>()), window);
    if (kind != "explicit") throw ParseError("unknown module kind '" + kind + "'");

    std::map<std::pair<int, IVec>, int> dims;
    for (auto& s : doc.at("spaces")) {
        int cell = r.complex().cell_by_name(s.at("cell").get<std::string>());
        DegreeElem d = r.canonicalize(cell, to_ivec(s.at("coords")));
        dims[{d.cell, d.coords}] = s.at("dim").get<int>();
    }
    std::map<std::pair<std::pair<int, IVec>, std::pair<int, IVec>>, QMat> mults;
    for (auto& mu : doc.value("mults", json::array())) {
        int bc = r.complex().cell_by_name(mu.at("b_cell").get<std::string>());
        int ac = r.complex().cell_by_name(mu.at("a_cell").get<std::string>());
        DegreeElem b = r.canonicalize(bc, to_ivec(mu.at("b_coords")));
        DegreeElem a = r.canonicalize(ac, to_ivec(mu.at("a_coords")));
        auto rows = mu.at("matrix");
        QMat q((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
        for (int i = 0; i < q.rows; ++i)
            for (int j = 0; j < q.cols; ++j) q.at(i, j) = to_rat(rows[(size_t)i][(size_t)j]);
        mults[{{b.cell, b.coords}, {a.cell, a.coords}}] = std::move(q);
    }
    return explicit_module(r, window, std::move(dims), std::move(mults));
}

} // namespace torface

#pragma once

/* Ext charts: the (s, t) table of finitely generated p-local groups with
 * named generators, rendered as TSV (round-trippable), JSON and an SVG dot
 * grid at (t - s, s). */

#include "chromalg/cobar.hpp"

#include <json.hpp>

namespace chromalg {

struct ExtChart {
    long prime = 0;
    long vmax = 0;
    long degree_bound = 0;
    long smax = 0;
    long tmin = 0;
    long tmax = 0;
    std::string module_name;
    std::string algebroid;
    std::map<std::pair<long, long>, ExtEntry> entries;  // (s, t) -> group

    bool operator==(const ExtChart& o) const {
        return prime == o.prime && entries == o.entries;
    }
};

template <class R, class M>
ExtChart chart(const CobarComplex<R, M>& C, long smax, long tmin, long tmax,
               const std::string& module_name, const std::string& algebroid) {
    ExtChart ch;
    ch.prime = C.H->prime;
    ch.vmax = C.H->vmax;
    ch.degree_bound = C.H->degree_bound;
    ch.smax = smax;
    ch.tmin = tmin;
    ch.tmax = tmax;
    ch.module_name = module_name;
    ch.algebroid = algebroid;
    for (long s = 0; s <= smax; ++s)
        for (long t = tmin; t <= tmax; t += 2) {
            ExtEntry e = ext_group(C, s, t);
            if (!e.group.is_zero()) ch.entries[{s, t}] = std::move(e);
        }
    return ch;
}

/* ---- TSV ---------------------------------------------------------------- */

inline std::string chart_to_tsv(const ExtChart& ch) {
    std::ostringstream os;
    os << "# chromalg ext-chart v1\n";
    os << "# prime=" << ch.prime << " vmax=" << ch.vmax << " degbound="
       << ch.degree_bound << " smax=" << ch.smax << " tmin=" << ch.tmin
       << " tmax=" << ch.tmax << " module=" << ch.module_name << " algebroid="
       << ch.algebroid << "\n";
    os << "s\tt\tfree\ttorsion\tgenerators\n";
    for (const auto& [st, e] : ch.entries) {
        os << st.first << "\t" << st.second << "\t" << e.group.free_rank << "\t"
           << e.group.torsion_str() << "\t";
        for (size_t i = 0; i < e.generators.size(); ++i)
            os << (i ? ";" : "") << e.generators[i];
        os << "\n";
    }
    return os.str();
}

inline ExtChart chart_from_tsv(const std::string& text) {
    ExtChart ch;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# prime=", 0) == 0) {
            std::istringstream hs(line.substr(2));
            std::string kv;
            while (hs >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "prime") ch.prime = std::stol(v);
                else if (k == "vmax") ch.vmax = std::stol(v);
                else if (k == "degbound") ch.degree_bound = std::stol(v);
                else if (k == "smax") ch.smax = std::stol(v);
                else if (k == "tmin") ch.tmin = std::stol(v);
                else if (k == "tmax") ch.tmax = std::stol(v);
                else if (k == "module") ch.module_name = v;
                else if (k == "algebroid") ch.algebroid = v;
            }
            continue;
        }
        if (line.empty() || line[0] == '#' || line.rfind("s\t", 0) == 0) continue;
        std::istringstream ls(line);
        std::string f_s, f_t, f_free, f_tors, f_gens;
        std::getline(ls, f_s, '\t');
        std::getline(ls, f_t, '\t');
        std::getline(ls, f_free, '\t');
        std::getline(ls, f_tors, '\t');
        std::getline(ls, f_gens, '\t');
        ExtEntry e;
        e.group.prime = ch.prime;
        e.group.free_rank = std::stol(f_free);
        if (!f_tors.empty()) {
            std::istringstream ts(f_tors);
            std::string tok;
            while (std::getline(ts, tok, ',')) {
                long order = std::stol(tok);
                long exp = 0;
                while (order > 1) {
                    order /= ch.prime;
                    ++exp;
                }
                e.group.torsion_exponents.push_back(exp);
            }
        }
        if (!f_gens.empty()) {
            std::istringstream gs(f_gens);
            std::string tok;
            while (std::getline(gs, tok, ';')) e.generators.push_back(tok);
        }
        ch.entries[{std::stol(f_s), std::stol(f_t)}] = std::move(e);
    }
    return ch;
}

/* ---- JSON --------------------------------------------------------------- */

inline std::string chart_to_json(const ExtChart& ch) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["prime"] = ch.prime;
    j["vmax"] = ch.vmax;
    j["degbound"] = ch.degree_bound;
    j["smax"] = ch.smax;
    j["tmin"] = ch.tmin;
    j["tmax"] = ch.tmax;
    j["module"] = ch.module_name;
    j["algebroid"] = ch.algebroid;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [st, e] : ch.entries) {
        nlohmann::json row;
        row["s"] = st.first;
        row["t"] = st.second;
        row["free"] = e.group.free_rank;
        row["torsion"] = e.group.torsion_str();
        row["generators"] = e.generators;
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j.dump(2) + "\n";
}

/* ---- SVG dot grid ------------------------------------------------------- */

inline std::string chart_to_svg(const ExtChart& ch) {
    const long cell = 40, margin = 60;
    long xmin = ch.tmin - ch.smax, xmax = ch.tmax;
    long width = (xmax - xmin + 2) * cell + 2 * margin;
    long height = (ch.smax + 2) * cell + 2 * margin;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "<!-- chromalg ext-chart v1: x = t-s, y = s; module "
       << ch.module_name << " -->\n";
    auto px = [&](long x) { return margin + (x - xmin) * cell; };
    auto py = [&](long s) { return height - margin - (s + 1) * cell; };
    // axes
    os << "<line x1=\"" << margin << "\" y1=\"" << py(-1) << "\" x2=\"" << width - margin
       << "\" y2=\"" << py(-1) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << py(-1) << "\" x2=\"" << margin
       << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";
    for (long x = xmin; x <= xmax; x += 2)
        os << "<text x=\"" << px(x) << "\" y=\"" << py(-1) + 20
           << "\" font-size=\"10\" text-anchor=\"middle\">" << x << "</text>\n";
    for (long s = 0; s <= ch.smax; ++s)
        os << "<text x=\"" << margin - 20 << "\" y=\"" << py(s) + 4
           << "\" font-size=\"10\" text-anchor=\"middle\">" << s << "</text>\n";
    for (const auto& [st, e] : ch.entries) {
        long x = st.second - st.first, s = st.first;
        os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(s)
           << "\" r=\"5\" fill=\"black\"/>\n";
        os << "<text x=\"" << px(x) + 8 << "\" y=\"" << py(s) - 6
           << "\" font-size=\"9\">" << e.group.str() << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace chromalg

#include "carpetlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carpetlab {

using nlohmann::json;

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, p);
}

void write_json_atomic(const std::string& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

json to_json(const ResistanceEntry& e) {
    return json{{"n", e.n},
                {"grid", e.grid},
                {"grid_coarse", e.grid_coarse},
                {"grid_fine", e.grid_fine},
                {"G", e.g},
                {"D", e.d},
                {"residual", e.residual}};
}

json to_json(const InequalityEntry& e) {
    return json{{"name", e.name}, {"n", e.n},         {"m", e.m},
                {"lhs", e.lhs},   {"rhs", e.rhs},     {"margin", e.margin},
                {"slack", e.slack}, {"holds", e.holds}};
}

json to_json(const LambdaEstimate& e) {
    return json{{"fit", e.fit}, {"fekete_lo", e.fekete_lo}, {"fekete_hi", e.fekete_hi},
                {"c", e.c}};
}

json to_json(const ScalingReport& r) {
    json table = json::array();
    for (const auto& e : r.table) table.push_back(to_json(e));
    json ledger = json::array();
    for (const auto& e : r.ledger) ledger.push_back(to_json(e));
    return json{{"rho", r.rho},
                {"mesh_coarse", r.mesh_coarse},
                {"mesh_fine", r.mesh_fine},
                {"table", table},
                {"lambda", to_json(r.lambda)},
                {"beta", r.beta},
                {"ledger", ledger}};
}

json to_json(const CornerMoveReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back(json{{"x", s.x}, {"p6", s.p6}});
    return json{{"bound", r.bound}, {"samples", samples}};
}

json to_json(const YChainReport& r) {
    json expected = json::array(), empirical = json::array(), counts = json::array();
    for (int i = 0; i < 4; ++i) {
        expected.push_back(r.expected[static_cast<std::size_t>(i)]);
        empirical.push_back(r.empirical[static_cast<std::size_t>(i)]);
        counts.push_back(r.counts[static_cast<std::size_t>(i)]);
    }
    return json{{"expected", expected},
                {"empirical", empirical},
                {"counts", counts},
                {"row_total", r.row_total}};
}

json to_json(const KnightMoveReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back(json{{"x", s.x}, {"p1", s.p6}});
    return json{{"min_p1", r.min_p1}, {"samples", samples}};
}

json to_json(const ExitTimeReport& r) {
    json table = json::array();
    for (const auto& e : r.table)
        table.push_back(json{{"r", e.r}, {"mean", e.mean}, {"se", e.se}});
    return json{{"table", table}, {"exponent", r.exponent}};
}

json to_json(const FoldingResult& r) {
    return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"diff", r.lhs - r.rhs}};
}

json to_json(const HarnackReport& r) {
    json atoms = json::array();
    for (const auto& a : r.atoms)
        atoms.push_back(json{{"label", a.label},
                             {"sup", a.sup},
                             {"inf", a.inf},
                             {"ratio", a.ratio},
                             {"degenerate", a.degenerate}});
    return json{{"m", r.m},       {"ci", r.ci},     {"cj", r.cj},
                {"mesh", r.mesh}, {"theta", r.theta}, {"atoms", atoms}};
}

json to_json(const DiagonalProfile& p) {
    json table = json::array();
    for (const auto& e : p.table)
        table.push_back(json{{"t", e.t},
                             {"steps", e.steps},
                             {"q", e.q},
                             {"mu_ball", e.mu_ball},
                             {"profile", e.profile}});
    return json{{"table", table}, {"band_lo", p.band_lo}, {"band_hi", p.band_hi}};
}

json to_json(const EnvelopeFit& f) {
    return json{{"c1", f.c1}, {"c2", f.c2}, {"c3", f.c3}, {"points", f.points.size()}};
}

json to_json(const RescalingCheck& c) {
    return json{{"t", c.t},
                {"steps", c.steps},
                {"fine", c.fine},
                {"coarse", c.coarse},
                {"rel_err", c.rel_err}};
}

std::string scaling_csv(const ScalingReport& r) {
    std::ostringstream out;
    out.precision(12);
    out << "n,method,R\n";
    for (const auto& e : r.table) {
        out << e.n << ",grid," << e.grid << "\n";
        out << e.n << ",G," << e.g << "\n";
        out << e.n << ",D," << e.d << "\n";
    }
    return out.str();
}

}  // namespace carpetlab

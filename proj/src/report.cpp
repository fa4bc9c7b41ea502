#include "ctilt/report.hpp"

#include "ctilt/functor_category.hpp"

#include <functional>
#include <iomanip>
#include <sstream>

namespace ctilt {

namespace {

Json dims_json(const Module& m) { return Json(m.dims()); }

void require_field(const std::string& command, bool present, const std::string& what)
{
    if (!present) throw InputError(command + " needs " + what + " in the problem file");
}

Subcategory subcategory_of(const ProblemFile& p, const std::vector<std::string>& names)
{
    return Subcategory(p.algebra, p.list(names), names);
}

// Certifies the atlas, recording every certification failure in the report.
std::optional<CertifiedAtlas> certified_atlas(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    const IndecAtlas atlas{p.algebra, p.list(p.atlas), p.atlas};
    const Diagnostics diag = certify_atlas(atlas, seed);
    for (const auto& f : diag.failures) r.fail("atlas certification", "", "", 0, 0, f);
    if (!diag.ok()) return std::nullopt;
    return CertifiedAtlas::certify(atlas, seed);
}

void add_ct_failures(Report& r, const CTReport& ct)
{
    for (const auto& f : ct.failures) r.fail(f.condition, f.first, f.second, f.ext_index, f.dimension);
}

Json sequence_json(const DSequence& s, const Subcategory& sub)
{
    Json objects = Json::array();
    for (const auto& obj : s.objects) {
        const auto dec = decompose_in(obj, sub);
        objects.push_back(Json{{"summands", dec ? describe(*dec, sub) : "?"}, {"dims", dims_json(obj)}});
    }
    return objects;
}

std::vector<std::string> names_of(const std::vector<std::size_t>& idx, const CertifiedAtlas& atlas)
{
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(atlas.name(i));
    return out;
}

Json matrix_json(const std::vector<std::vector<std::size_t>>& m) { return Json(m); }

// -- commands --------------------------------------------------------------

void cmd_validate(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    const Algebra& alg = *p.algebra;
    Json basis = Json::array();
    for (const auto& path : alg.basis()) basis.push_back(path_label(alg.quiver(), path));
    r.data["algebra"] = Json{{"vertices", alg.quiver().vertex_count()},
                             {"arrows", alg.quiver().arrow_count()},
                             {"dimension", alg.dim()},
                             {"basis", basis}};
    const Diagnostics table = validate_algebra(alg.table());
    for (const auto& f : table.failures) r.fail("algebra", "", "", 0, 0, f);

    Json modules = Json::array();
    for (const auto& name : p.module_order) {
        const Module& m = p.module(name);
        modules.push_back(Json{{"name", name}, {"dims", dims_json(m)}, {"indecomposable", is_indecomposable(m)}});
    }
    r.data["modules"] = modules;
    Json maps = Json::array();
    for (const auto& m : p.maps) maps.push_back(Json{{"name", m.name}, {"source", m.source}, {"target", m.target}});
    r.data["maps"] = maps;
    r.data["subcategory"] = p.subcategory;
    r.data["atlas"] = p.atlas;
    r.data["d"] = p.d;
    r.data["seed"] = seed;

    if (!p.subcategory.empty()) {
        try {
            subcategory_of(p, p.subcategory);
        } catch (const InputError& e) {
            r.fail("subcategory", "", "", 0, 0, e.what());
        }
    }
    if (!p.atlas.empty()) r.data["atlas_certified"] = certified_atlas(p, seed, r).has_value();
    else r.data["atlas_certified"] = nullptr;
}

void cmd_ext_table(const ProblemFile& p, const CommandOptions& o, Report& r)
{
    const auto& names = p.subcategory.empty() ? p.atlas : p.subcategory;
    require_field(r.command, !names.empty(), "a subcategory or an atlas");
    const std::size_t max_i = o.max_ext.value_or(std::max<std::size_t>(1, p.d - 1));
    if (max_i < 1) throw InputError("--max-ext must be at least 1");
    const Subcategory sub = subcategory_of(p, names);
    const ExtTable t = ext_table(sub, max_i);
    Json ext = Json::array();
    for (std::size_t i = 0; i < sub.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < sub.size(); ++j) {
            Json cell = Json::array();
            for (std::size_t k = 1; k <= max_i; ++k) cell.push_back(t.at(i, j, k));
            row.push_back(cell);
        }
        ext.push_back(row);
    }
    r.data["modules"] = names;
    r.data["max_ext"] = max_i;
    r.data["ext"] = ext;
}

void cmd_check_ct(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    require_field(r.command, !p.subcategory.empty(), "a nonempty subcategory");
    require_field(r.command, !p.atlas.empty(), "an atlas");
    r.data["d"] = p.d;
    r.data["subcategory"] = p.subcategory;
    r.data["atlas"] = p.atlas;
    const auto atlas = certified_atlas(p, seed, r);
    if (!atlas) return;
    add_ct_failures(r, is_d_cluster_tilting(subcategory_of(p, p.subcategory), *atlas, p.d));
}

void cmd_search_ct(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    require_field(r.command, !p.atlas.empty(), "an atlas");
    r.data["d"] = p.d;
    r.data["atlas"] = p.atlas;
    const auto atlas = certified_atlas(p, seed, r);
    if (!atlas) return;
    Json results = Json::array();
    for (const auto& idx : search_d_ct(*atlas, p.d)) results.push_back(names_of(idx, *atlas));
    r.data["count"] = results.size();
    r.data["results"] = results;
    if (results.empty()) r.fail("no " + std::to_string(p.d) + "-cluster tilting subcategory");
}

void cmd_d_sequence(const ProblemFile& p, const CommandOptions& o, Report& r, bool kernel)
{
    require_field(r.command, !p.subcategory.empty(), "a nonempty subcategory");
    require_field(r.command, !p.maps.empty() || o.map, "a map");
    const NamedMap& m = o.map ? p.map(*o.map) : p.maps.front();
    const Subcategory sub = subcategory_of(p, p.subcategory);
    r.data["map"] = Json{{"name", m.name}, {"source", m.source}, {"target", m.target}};
    r.data["d"] = p.d;
    try {
        const DSequence s = kernel ? d_kernel(m.map, sub, p.d) : d_cokernel(m.map, sub, p.d);
        const DExactReport ex = verify_d_exact(s, sub);
        r.data["objects"] = sequence_json(s, sub);
        r.data["exactness"] = ex.verdict();
        const bool needed = kernel ? ex.covariant : ex.contravariant;
        if (!ex.complex) r.fail("not a complex", "", "", 0, 0, "composite at " + std::to_string(*ex.bad_composite));
        else if (!needed) r.fail(kernel ? "covariant exactness" : "contravariant exactness");
    } catch (const ConstructionError& e) {
        r.fail("construction", "", "", 0, 0, e.what());
    } catch (const PreconditionError& e) {
        r.fail("precondition", "", "", 0, 0, e.what());
    }
}

void cmd_m_resolve(const ProblemFile& p, const CommandOptions& o, Report& r)
{
    require_field(r.command, !p.subcategory.empty(), "a nonempty subcategory");
    std::vector<std::string> targets;
    if (o.module) targets.push_back(*o.module);
    else targets = p.atlas.empty() ? p.module_order : p.atlas;
    const Subcategory sub = subcategory_of(p, p.subcategory);
    r.data["d"] = p.d;
    Json out = Json::array();
    for (const auto& name : targets) {
        const Module& x = p.module(name);
        Json entry{{"module", name}};
        try {
            const Resolution res = m_resolution(x, sub, p.d);
            Json terms = Json::array();
            for (const auto& t : res.terms) {
                const auto dec = decompose_in(t, sub);
                terms.push_back(dec ? describe(*dec, sub) : "?");
            }
            entry["terms"] = terms;
            entry["exact"] = is_exact_resolution(res, true);
            if (!is_exact_resolution(res, true)) r.fail("resolution not exact", name);
        } catch (const ConstructionError& e) {
            entry["terms"] = nullptr;
            r.fail("construction", name, "", 0, 0, e.what());
        } catch (const PreconditionError& e) {
            entry["terms"] = nullptr;
            r.fail("precondition", name, "", 0, 0, e.what());
        }
        out.push_back(entry);
    }
    r.data["resolutions"] = out;
}

void cmd_functor_report(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    require_field(r.command, !p.subcategory.empty(), "a nonempty subcategory");
    require_field(r.command, !p.atlas.empty(), "an atlas");
    r.data["d"] = p.d;
    const auto atlas = certified_atlas(p, seed, r);
    if (!atlas) return;
    const Subcategory sub = subcategory_of(p, p.subcategory);
    QuotientReport q;
    try {
        q = quotient_equivalence_report(sub, *atlas, p.d);
    } catch (const PreconditionError& e) {
        r.fail("precondition", "", "", 0, 0, e.what());
        return;
    }
    r.data["modules"] = p.subcategory;
    r.data["gamma_dim"] = q.gamma_dim;
    r.data["e_members"] = q.e_members;
    r.data["e_gamma_e_dim"] = q.e_gamma_e_dim;
    r.data["algebra_dim"] = q.algebra_dim;
    r.data["structure_match"] = q.structure_match;
    r.data["hom_a"] = matrix_json(q.hom_a);
    r.data["hom_gamma"] = matrix_json(q.hom_gamma);
    r.data["restriction"] = q.restriction;
    if (!q.dims_ok()) r.fail("dim e Gamma e", "", "", 0, q.e_gamma_e_dim);
    if (!q.structure_ok()) r.fail("structure constants");
    for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = 0; j < sub.size(); ++j)
            if (q.hom_a[i][j] != q.hom_gamma[i][j]) r.fail("fully faithful", sub.name(i), sub.name(j), 0, q.hom_gamma[i][j]);
        if (!q.restriction[i]) r.fail("restriction", sub.name(i));
    }

    // Representables against the d-cokernel sequences of the Hom basis maps.
    const AuslanderAlgebra gamma(sub);
    std::vector<DSequence> sequences;
    for (std::size_t b = 0; b < gamma.dim(); ++b) {
        const DSequence s = d_cokernel(gamma.element(b), sub, p.d);
        if (verify_d_exact(s, sub).both()) sequences.push_back(s);
    }
    std::size_t passed = 0, checked = 0;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const auto res = left_d_exactness_check(yoneda_module(sub.member(i), gamma), sequences, gamma);
        for (std::size_t k = 0; k < res.size(); ++k) {
            ++checked;
            if (res[k].exact) ++passed;
            else r.fail("left d-exactness", sub.name(i), "", 0, 0, "sequence " + std::to_string(k));
        }
    }
    r.data["left_d_exactness"] = Json{{"sequences", sequences.size()}, {"checked", checked}, {"passed", passed}};
}

void cmd_cotorsion(const ProblemFile& p, std::uint64_t seed, Report& r)
{
    require_field(r.command, !p.subcategory.empty(), "a nonempty subcategory");
    require_field(r.command, !p.atlas.empty(), "an atlas");
    r.data["subcategory"] = p.subcategory;
    r.data["atlas"] = p.atlas;
    const auto atlas = certified_atlas(p, seed, r);
    if (!atlas) return;
    const CTReport ct = check_cotorsion_pair(subcategory_of(p, p.subcategory), *atlas);
    add_ct_failures(r, ct);
    Json seqs = Json::array();
    for (const auto& s : ct.sequences)
        seqs.push_back(Json{{"kind", s.kind}, {"module", s.module}, {"first", s.first}, {"middle", s.middle}, {"last", s.last}});
    r.data["sequences"] = seqs;
}

// -- human output ----------------------------------------------------------

std::string text_of(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string grid(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                 const std::function<std::string(std::size_t, std::size_t)>& cell)
{
    std::size_t width = 1;
    for (const auto& n : rows) width = std::max(width, n.size());
    std::size_t cw = 1;
    for (const auto& n : cols) cw = std::max(cw, n.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) cw = std::max(cw, cell(i, j).size());
    std::ostringstream out;
    out << "  " << std::setw(static_cast<int>(width)) << "";
    for (const auto& c : cols) out << "  " << std::setw(static_cast<int>(cw)) << c;
    out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "  " << std::setw(static_cast<int>(width)) << std::left << rows[i] << std::right;
        for (std::size_t j = 0; j < cols.size(); ++j) out << "  " << std::setw(static_cast<int>(cw)) << cell(i, j);
        out << "\n";
    }
    return out.str();
}

std::string human(const Report& r)
{
    std::ostringstream out;
    const Json& d = r.data;
    out << r.command << ": " << (r.verdict ? "pass" : "fail") << "\n";
    if (r.command == "ext-table" && d.contains("ext")) {
        const auto names = d["modules"].get<std::vector<std::string>>();
        for (std::size_t k = 1; k <= d["max_ext"].get<std::size_t>(); ++k) {
            out << "Ext^" << k << "(row, column)\n";
            out << grid(names, names, [&](std::size_t i, std::size_t j) { return text_of(d["ext"][i][j][k - 1]); });
        }
    } else if (r.command == "search-ct" && d.contains("results")) {
        out << d["count"].get<std::size_t>() << " subcategories for d = " << text_of(d["d"]) << "\n";
        for (const auto& res : d["results"]) {
            out << " ";
            for (const auto& n : res) out << " " << n.get<std::string>();
            out << "\n";
        }
    } else if ((r.command == "dkernel" || r.command == "dcokernel") && d.contains("objects")) {
        out << "map " << text_of(d["map"]["name"]) << ": " << text_of(d["map"]["source"]) << " -> "
            << text_of(d["map"]["target"]) << "\n ";
        for (std::size_t k = 0; k < d["objects"].size(); ++k)
            out << (k ? " -> " : " ") << text_of(d["objects"][k]["summands"]);
        out << "\n  exactness: " << text_of(d["exactness"]) << "\n";
    } else if (r.command == "m-resolve") {
        for (const auto& e : d["resolutions"]) {
            out << "  " << text_of(e["module"]) << ":";
            if (e["terms"].is_null()) {
                out << " (failed)\n";
                continue;
            }
            out << " 0";
            for (auto it = e["terms"].rbegin(); it != e["terms"].rend(); ++it) out << " -> " << text_of(*it);
            out << " -> " << text_of(e["module"]) << " -> 0\n";
        }
    } else if (r.command == "cotorsion-check" && d.contains("sequences")) {
        for (const auto& s : d["sequences"])
            out << "  " << text_of(s["kind"]) << " " << text_of(s["module"]) << ": 0 -> " << text_of(s["first"])
                << " -> " << text_of(s["middle"]) << " -> " << text_of(s["last"]) << " -> 0\n";
    } else if (r.command == "functor-report" && d.contains("gamma_dim")) {
        const auto names = d["modules"].get<std::vector<std::string>>();
        out << "  dim Gamma = " << text_of(d["gamma_dim"]) << ", dim eGammae = " << text_of(d["e_gamma_e_dim"])
            << ", dim A = " << text_of(d["algebra_dim"]) << ", structure match: " << text_of(d["structure_match"])
            << "\n  e marks:";
        for (const auto& n : d["e_members"]) out << " " << n.get<std::string>();
        out << "\n  dim Hom_A / dim Hom_Gamma(yoneda, yoneda)\n";
        out << grid(names, names, [&](std::size_t i, std::size_t j) {
            return text_of(d["hom_a"][i][j]) + "/" + text_of(d["hom_gamma"][i][j]);
        });
        out << "  left d-exactness: " << text_of(d["left_d_exactness"]["passed"]) << "/"
            << text_of(d["left_d_exactness"]["checked"]) << "\n";
    } else if (r.command == "check-ct" && d.contains("subcategory")) {
        out << "  d = " << text_of(d["d"]) << ", subcategory:";
        for (const auto& n : d["subcategory"]) out << " " << n.get<std::string>();
        out << "\n";
    } else if (r.command == "validate") {
        out << "  algebra of dimension " << text_of(d["algebra"]["dimension"]) << "\n";
        for (const auto& m : d["modules"])
            out << "  " << text_of(m["name"]) << " " << m["dims"].dump()
                << (m["indecomposable"].get<bool>() ? "" : " (decomposable)") << "\n";
    }
    for (const auto& f : r.failures) {
        out << "  failure: " << f["condition"].get<std::string>();
        if (!f["first"].get<std::string>().empty()) out << " " << f["first"].get<std::string>();
        if (!f["second"].get<std::string>().empty()) out << ", " << f["second"].get<std::string>();
        if (f["ext_index"].get<std::size_t>() > 0) out << " (Ext^" << f["ext_index"].get<std::size_t>() << " = "
                                                   << f["dimension"].get<std::size_t>() << ")";
        if (!f["detail"].get<std::string>().empty()) out << ": " << f["detail"].get<std::string>();
        out << "\n";
    }
    if (r.timings) out << "  timings: " << r.timings->dump() << "\n";
    return out.str();
}

}  // namespace

void Report::fail(const std::string& condition, const std::string& first, const std::string& second,
                  std::size_t ext_index, std::size_t dimension, const std::string& detail)
{
    verdict = false;
    failures.push_back(Json{{"condition", condition},
                            {"first", first},
                            {"second", second},
                            {"ext_index", ext_index},
                            {"dimension", dimension},
                            {"detail", detail}});
}

Json Report::to_json() const
{
    Json j{{"command", command}, {"verdict", verdict}, {"failures", failures}, {"data", data}};
    if (timings) j["timings"] = *timings;
    return j;
}

Report Report::from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string() || !j.contains("verdict") ||
        !j["verdict"].is_boolean() || !j.contains("failures") || !j["failures"].is_array() || !j.contains("data") ||
        !j["data"].is_object())
        throw InputError("not a report: needs command, verdict, failures and data");
    Report r;
    r.command = j["command"].get<std::string>();
    r.verdict = j["verdict"].get<bool>();
    r.failures = j["failures"];
    r.data = j["data"];
    if (j.contains("timings")) r.timings = j["timings"];
    return r;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"validate", "ext-table", "check-ct", "search-ct", "dkernel",
                                                "dcokernel", "m-resolve", "functor-report", "cotorsion-check"};
    return names;
}

Report run_command(const std::string& command, const ProblemFile& problem, const CommandOptions& options)
{
    Report r;
    r.command = command;
    const std::uint64_t seed = options.seed.value_or(problem.seed);
    try {
        if (command == "validate") cmd_validate(problem, seed, r);
        else if (command == "ext-table") cmd_ext_table(problem, options, r);
        else if (command == "check-ct") cmd_check_ct(problem, seed, r);
        else if (command == "search-ct") cmd_search_ct(problem, seed, r);
        else if (command == "dkernel") cmd_d_sequence(problem, options, r, true);
        else if (command == "dcokernel") cmd_d_sequence(problem, options, r, false);
        else if (command == "m-resolve") cmd_m_resolve(problem, options, r);
        else if (command == "functor-report") cmd_functor_report(problem, seed, r);
        else if (command == "cotorsion-check") cmd_cotorsion(problem, seed, r);
        else throw InputError("unknown command '" + command + "'");
    } catch (const DecompositionError& e) {
        r.fail("decomposition", "", "", 0, 0, e.what());
    } catch (const ConstructionError& e) {
        r.fail("construction", "", "", 0, 0, e.what());
    } catch (const PreconditionError& e) {
        r.fail("precondition", "", "", 0, 0, e.what());
    }
    return r;
}

std::string emit_report(const Report& report, const std::string& format)
{
    if (format == "json") return report.to_json().dump(2) + "\n";
    if (format == "human") return human(report);
    throw InputError("unknown format '" + format + "' (json or human)");
}

}  // namespace ctilt

// hftctl: run the verification suites, compute surface invariants and classify matrix models.
// Exit codes: 0 everything passed, 1 some check failed, 2 bad input.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hft/error.hpp"
#include "hft/gcenter.hpp"
#include "spec_file.hpp"

namespace {

using nlohmann::json;

void print_report(const hft::Report& rep, const std::string& format, const json& header) {
    if (format == "json") {
        json out = header;
        out["pass"] = rep.pass();
        out["failures"] = rep.failures();
        out["checks"] = rep.to_json()["checks"];
        std::cout << out.dump(2) << "\n";
        return;
    }
    for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.pass && !c.witness.empty()) std::cout << ": " << c.witness;
        std::cout << "\n";
    }
    std::cout << (rep.pass() ? "all " + std::to_string(rep.checks.size()) + " checks passed"
                             : std::to_string(rep.failures()) + " of " + std::to_string(rep.checks.size()) +
                                   " checks failed")
              << "\n";
}

int cmd_check(const std::string& input, const std::string& mode, const std::string& format) {
    auto spec = hftctl::load_spec(hftctl::read_json_file(input));
    if (mode == "unoriented" && !spec.stellar) throw hft::Error("Schema", "unoriented mode needs a \"stellar\" entry");
    const auto& f = spec.frobenius;
    hft::Report rep;

    rep.merge(hft::is_quasi_biangular(f), "frobenius/");
    if (!f.z) {
        rep.add("z", false, "no central z solves the quasi-biangular equations");
        print_report(rep, format, {{"input", input}, {"mode", mode}});
        return 1;
    }
    if (hft::verify_z(f, *f.z)) rep.merge(hft::verify_crossed(hft::g_center(f)), "crossed/");
    auto t = hft::standard_theory(f);
    rep.merge(hft::validate_context(t.zeta), "context/");
    rep.merge(hft::relation_suite(t), "relations/");

    if (mode == "unoriented") {
        const auto& s = *spec.stellar;
        rep.merge(hft::validate_stellar(s), "stellar/");
        rep.merge(hft::check_quasi_biangular_compatibility(s, f), "compatibility/");
        try {
            rep.merge(hft::verify_extended_crossed(hft::extract_phi_theta(s, f)), "extended/");
        } catch (const hft::Error& ex) {
            rep.add("extended/extraction", false, ex.what());
        }
        rep.merge(hft::unoriented_relation_suite(hft::stellar_theory(f, s), s), "unoriented/");
    }
    print_report(rep, format, {{"input", input}, {"mode", mode}});
    return rep.pass() ? 0 : 1;
}

hft::Monodromy parse_monodromy(const hft::GroupTable& G, const std::string& text) {
    hft::Monodromy m;
    std::stringstream pairs(text);
    std::string pair;
    while (std::getline(pairs, pair, ';')) {
        auto comma = pair.find(',');
        if (comma == std::string::npos) throw hft::Error("MonodromyInvalid", "expected a,b pairs separated by ';'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(' '));
            s.erase(s.find_last_not_of(' ') + 1);
            return s;
        };
        m.emplace_back(G.lookup(trim(pair.substr(0, comma))), G.lookup(trim(pair.substr(comma + 1))));
    }
    return m;
}

int cmd_invariant(const std::string& input, int genus, const std::string& monodromy, std::size_t audit,
                  const std::string& format) {
    auto spec = hftctl::load_spec(hftctl::read_json_file(input));
    const auto& G = spec.group;
    hft::Monodromy m = monodromy.empty() ? hft::Monodromy(static_cast<std::size_t>(std::max(genus, 0)),
                                                          {G.identity(), G.identity()})
                                         : parse_monodromy(G, monodromy);
    if (genus >= 0 && static_cast<std::size_t>(genus) != m.size())
        throw hft::Error("MonodromyInvalid", "genus " + std::to_string(genus) + " but " + std::to_string(m.size()) +
                                                 " handle pairs given");
    auto t = hft::standard_theory(spec.frobenius);
    hft::Scalar value = hft::surface_invariant(t, m);

    json out = {{"input", input}, {"genus", m.size()}, {"invariant", value.str()}};
    bool ok = true;
    if (audit > 0) {
        auto res = hft::decomposition_audit(t, m, audit);
        json alts = json::array();
        for (const auto& [name, v] : res.alternatives) alts.push_back({{"word", name}, {"value", v.str()}});
        out["audit"] = {{"pass", res.pass()}, {"alternatives", alts}};
        ok = res.pass();
    }
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << value << "\n";
        if (audit > 0) {
            for (const auto& a : out["audit"]["alternatives"])
                std::cout << "  " << a["value"].get<std::string>() << "  " << a["word"].get<std::string>() << "\n";
            std::cout << "audit " << (ok ? "passed" : "FAILED") << "\n";
        }
    }
    return ok ? 0 : 1;
}

std::vector<hft::Scalar> parse_scalar_list(const std::string& text) {
    std::vector<hft::Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(hft::Scalar::parse(item));
    return out;
}

int cmd_classify(const std::string& group_path, std::size_t n, int m, const std::string& r, const std::vector<std::string>& compare,
                 std::size_t budget) {
    auto G = hftctl::group_from_json(hftctl::read_json_file(group_path));
    if (!compare.empty()) {
        auto a = hft::model_from_json(hftctl::read_json_file(compare.at(0)), G);
        auto b = hft::model_from_json(hftctl::read_json_file(compare.at(1)), G);
        for (const auto* x : {&a, &b}) {
            auto rep = hft::validate_model(*x);
            if (!rep.pass()) throw hft::Error("Schema", "model data invalid: " + rep.to_json().dump());
        }
        auto w = hft::are_equivalent(a, b, budget);
        json out = {{"equivalent", w.has_value()}};
        if (w) out["witness"] = {{"perm", w->perm}, {"cochain", w->cochain}};
        std::cout << (w ? "equivalent" : "not equivalent") << "\n" << out.dump(2) << "\n";
        return 0;
    }
    std::vector<std::vector<hft::Scalar>> r_reps;
    if (!r.empty()) r_reps.push_back(parse_scalar_list(r));
    auto classes = hft::enumerate_classes(G, n, m, r_reps, {}, budget);
    json reps = json::array();
    for (const auto& c : classes) reps.push_back(hft::model_to_json(c));
    std::cout << json{{"classes", classes.size()}, {"representatives", reps}}.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded Frobenius algebras, Morita contexts and surface invariants"};
    app.require_subcommand(1);

    std::string input, mode = "oriented", format = "text", monodromy, group_path, r;
    int genus = -1, m = 2;
    std::size_t audit = 0, n = 1, budget = std::size_t{1} << 22;
    std::vector<std::string> compare;

    auto* check = app.add_subcommand("check", "run the verification suites on a spec file");
    check->add_option("--input", input, "spec file")->required();
    check->add_option("--mode", mode)->check(CLI::IsMember({"oriented", "unoriented"}));
    check->add_option("--report", format)->check(CLI::IsMember({"json", "text"}));

    auto* inv = app.add_subcommand("invariant", "evaluate a closed surface");
    inv->add_option("--input", input, "spec file")->required();
    inv->add_option("--genus", genus);
    inv->add_option("--monodromy", monodromy, "handle labels \"a1,b1;a2,b2\"");
    inv->add_option("--audit", audit, "number of alternative decompositions to compare");
    inv->add_option("--report", format)->check(CLI::IsMember({"json", "text"}));

    auto* cls = app.add_subcommand("classify", "enumerate or compare matrix-model data");
    cls->add_option("--group", group_path, "group JSON file")->required();
    cls->add_option("--n", n, "number of blocks");
    cls->add_option("--value-group", m, "order of the root-of-unity value group");
    cls->add_option("--r", r, "block weights, comma separated");
    cls->add_option("--compare", compare, "two model JSON files")->expected(2);
    cls->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(input, mode, format);
        if (*inv) return cmd_invariant(input, genus, monodromy, audit, format);
        return cmd_classify(group_path, n, m, r, compare, budget);
    } catch (const hft::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}

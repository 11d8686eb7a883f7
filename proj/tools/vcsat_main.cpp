#include "vcsat/errors.hpp"
#include "vcsat/family.hpp"
#include "vcsat/io.hpp"
#include "vcsat/modular.hpp"
#include "vcsat/probabilistic.hpp"
#include "vcsat/saturation.hpp"
#include "vcsat/sumset.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Context {
    std::string report = "text";
    Clock::time_point start = Clock::now();

    bool machine() const { return report == "machine"; }
};

double elapsed_ms(const Context& ctx) {
    return std::chrono::duration<double, std::milli>(Clock::now() - ctx.start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

ordered_json base_doc(const std::string& command) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    return doc;
}

void emit(const Context& ctx, ordered_json& doc, const std::string& text) {
    if (ctx.machine()) {
        doc["duration_ms"] = elapsed_ms(ctx);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

ordered_json elements_json(const vcsat::Subset& s) {
    return ordered_json(s.elements());
}

ordered_json members_json(const vcsat::SetFamily& fam) {
    ordered_json arr = ordered_json::array();
    for (std::uint64_t m : fam.masks()) arr.push_back(vcsat::mask_elements(m));
    return arr;
}

ordered_json family_json(const vcsat::SetFamily& fam) {
    ordered_json doc;
    doc["n"] = fam.ground_size();
    doc["size"] = fam.size();
    doc["members"] = members_json(fam);
    return doc;
}

int sum_mod(std::uint64_t mask, int m) {
    int s = 0;
    while (mask) {
        s += std::countr_zero(mask) + 1;
        mask &= mask - 1;
    }
    return s % m;
}

// ---- construct / extend ---------------------------------------------------

int emit_family(const Context& ctx, ordered_json& doc, const vcsat::SetFamily& fam,
                const std::string& out) {
    if (!out.empty()) vcsat::write_family_file(fam, out);
    doc["family"] = family_json(fam);
    std::string text;
    if (out.empty()) {
        text = vcsat::serialize_family(fam);
    } else {
        text = "wrote " + std::to_string(fam.size()) + " sets over [" +
               std::to_string(fam.ground_size()) + "] to " + out + "\n";
    }
    emit(ctx, doc, text);
    return 0;
}

int run_construct(const Context& ctx, int d, int n, const std::string& out) {
    const vcsat::SetFamily fam = vcsat::build_saturated(d, n);
    ordered_json doc = base_doc("construct");
    doc["parameters"] = {{"d", d}, {"n", n}, {"out", out.empty() ? ordered_json() : ordered_json(out)}};
    doc["vc"] = d - 1;
    doc["saturated"] = true;
    return emit_family(ctx, doc, fam, out);
}

int run_extend(const Context& ctx, const std::string& path, int element, int n2,
               const std::string& out) {
    const vcsat::SetFamily fam = vcsat::read_family_file(path);
    const vcsat::SetFamily extended = vcsat::extend_by_duplication(fam, element, n2);
    ordered_json doc = base_doc("extend");
    doc["parameters"] = {{"family", path},
                         {"element", element},
                         {"n", n2},
                         {"out", out.empty() ? ordered_json() : ordered_json(out)}};
    return emit_family(ctx, doc, extended, out);
}

// ---- verify ---------------------------------------------------------------

int verify_vc(const Context& ctx, ordered_json& doc, const vcsat::SetFamily& fam) {
    const int v = vcsat::vc_dimension(fam);
    doc["vc"] = v;
    emit(ctx, doc, "vc = " + std::to_string(v) + "\n");
    return 0;
}

int verify_saturation(const Context& ctx, ordered_json& doc, const vcsat::SetFamily& fam) {
    const vcsat::SaturationReport rep = vcsat::is_saturated(fam);
    doc["saturated"] = rep.saturated;
    doc["vc"] = rep.vc;
    std::string text = std::string("saturated: ") + (rep.saturated ? "yes" : "no") +
                       " (vc = " + std::to_string(rep.vc) + ")\n";
    if (rep.counterexample) {
        doc["counterexample"] = elements_json(*rep.counterexample);
        text += "addable without raising vc: " + rep.counterexample->to_string() + "\n";
    } else {
        doc["counterexample"] = nullptr;
    }
    if (rep.shattering_witness) {
        doc["shattering_witness"] = {
            {"missing_set", elements_json(rep.shattering_witness->first)},
            {"would_shatter", elements_json(rep.shattering_witness->second)}};
        text += "first missing set " + rep.shattering_witness->first.to_string() +
                " would shatter " + rep.shattering_witness->second.to_string() + "\n";
    }
    emit(ctx, doc, text);
    return rep.saturated ? 0 : 1;
}

int verify_almost(const Context& ctx, ordered_json& doc, const vcsat::SetFamily& fam) {
    if (fam.size() == 0)
        throw vcsat::InvalidInputError("cannot infer the uniform size of an empty family");
    const int d = vcsat::Subset{fam.masks()[0], fam.ground_size()}.size();
    const vcsat::AlmostShatterReport rep = vcsat::verify_almost_shattering(fam, d);
    doc["d"] = d;
    doc["almost_shattering"] = rep.ok;
    std::string text = std::string("almost-shattering: ") + (rep.ok ? "yes" : "no") + "\n";
    if (rep.failing_subset) {
        doc["failing_subset"] = elements_json(*rep.failing_subset);
        ordered_json missing = ordered_json::array();
        text += "first failing subset: " + rep.failing_subset->to_string() + "\n";
        for (const vcsat::Subset& t : rep.missing_traces) {
            missing.push_back(elements_json(t));
            text += "  missing trace: " + t.to_string() + "\n";
        }
        doc["missing_traces"] = missing;
    }
    emit(ctx, doc, text);
    return rep.ok ? 0 : 1;
}

ordered_json conditions_json(const vcsat::ConditionReport& rep) {
    ordered_json doc;
    doc["cond1"] = rep.cond1;
    doc["cond2"] = rep.cond2;
    doc["cond3"] = rep.cond3;
    if (rep.witness)
        doc["witness"] = *rep.witness;
    else
        doc["witness"] = nullptr;
    return doc;
}

std::string conditions_text(const vcsat::ConditionReport& rep) {
    std::string text;
    text += std::string("condition 1 (transversal of the residue pairing): ") +
            (rep.cond1 ? "pass" : "FAIL") + "\n";
    text += std::string("condition 2 (contains both parities): ") +
            (rep.cond2 ? "pass" : "FAIL") + "\n";
    text += std::string("condition 3 (leave-one-out sums avoid 0 mod d): ") +
            (rep.cond3 ? "pass" : "FAIL") + "\n";
    if (rep.witness)
        text += "  violating residue: " + std::to_string(*rep.witness) + "\n";
    return text;
}

int verify_conditions(const Context& ctx, ordered_json& doc, const vcsat::SetFamily& fam) {
    const int n = fam.ground_size();
    if (n < 4 || n % 2 != 0)
        throw vcsat::InvalidInputError("conditions check needs a family over [2d], d >= 2");
    const int d = n / 2;
    for (std::uint64_t m : fam.masks())
        if (std::popcount(m) != d)
            throw vcsat::InvalidInputError("conditions check needs a d-uniform family over [2d]");
    doc["d"] = d;

    vcsat::ConditionReport rep;
    bool reconstructed = false;
    std::vector<int> residues;
    if (d % 2 == 1) {
        std::uint64_t sums = 0;
        for (std::uint64_t m : fam.masks()) sums |= std::uint64_t{1} << sum_mod(m, n);
        const vcsat::ResidueSet x(n, sums);
        reconstructed = vcsat::modular_family(d, x) == fam;
        if (reconstructed) {
            rep = vcsat::check_odd_conditions(d, x);
            residues = x.values();
        }
    } else {
        const std::uint64_t half = std::uint64_t{1} << (d / 2);
        const std::uint64_t threehalf = std::uint64_t{1} << (3 * d / 2);
        std::uint64_t sums = 0;
        for (std::uint64_t m : fam.masks()) sums |= std::uint64_t{1} << sum_mod(m, n);
        const vcsat::ResidueSet x(n, sums & ~(half | threehalf));
        const auto [f1, f2] = vcsat::even_families(d, x);
        std::vector<std::uint64_t> joined(f1.masks());
        joined.insert(joined.end(), f2.masks().begin(), f2.masks().end());
        reconstructed = vcsat::SetFamily::from_masks(n, std::move(joined)) == fam;
        if (reconstructed) {
            rep = vcsat::check_even_conditions(d, x);
            residues = x.values();
        }
    }

    doc["reconstructed"] = reconstructed;
    if (!reconstructed) {
        emit(ctx, doc,
             "family is not the residue-sum construction for d = " + std::to_string(d) +
                 "; conditions not applicable\n");
        return 1;
    }
    doc["x"] = residues;
    doc["conditions"] = conditions_json(rep);
    std::string text = "residue set: {";
    for (std::size_t i = 0; i < residues.size(); ++i)
        text += (i ? "," : "") + std::to_string(residues[i]);
    text += "} mod " + std::to_string(n) + "\n" + conditions_text(rep);
    emit(ctx, doc, text);
    return rep.all_pass() ? 0 : 1;
}

int run_verify(const Context& ctx, const std::string& path, const std::string& check) {
    const vcsat::SetFamily fam = vcsat::read_family_file(path);
    ordered_json doc = base_doc("verify");
    doc["parameters"] = {{"family", path}, {"check", check}};
    doc["family_size"] = fam.size();
    if (check == "vc") return verify_vc(ctx, doc, fam);
    if (check == "saturation") return verify_saturation(ctx, doc, fam);
    if (check == "almost-shatter") return verify_almost(ctx, doc, fam);
    return verify_conditions(ctx, doc, fam);
}

// ---- search-x / sample / lll / sumset / satnum ----------------------------

int run_search_x(const Context& ctx, int d) {
    const std::vector<vcsat::ResidueSet> found = vcsat::find_valid_x(d);
    ordered_json doc = base_doc("search-x");
    doc["parameters"] = {{"d", d}};
    doc["count"] = found.size();
    ordered_json sets = ordered_json::array();
    std::string text = std::to_string(found.size()) + " valid residue sets for d = " +
                       std::to_string(d) + "\n";
    for (const vcsat::ResidueSet& x : found) {
        sets.push_back(x.values());
        text += x.to_string() + "\n";
    }
    doc["sets"] = sets;
    emit(ctx, doc, text);
    return 0;
}

int run_sample(const Context& ctx, int d, std::uint64_t seed, std::uint64_t trials) {
    const vcsat::MonteCarloReport rep = vcsat::monte_carlo_search(d, trials, seed);
    ordered_json doc = base_doc("sample");
    doc["parameters"] = {{"d", d}, {"seed", seed}, {"trials", trials}};
    doc["successes"] = rep.successes;
    doc["success_rate"] = rep.success_rate;
    if (rep.first_success_seed)
        doc["first_success_seed"] = *rep.first_success_seed;
    else
        doc["first_success_seed"] = nullptr;
    std::string text = "trials = " + std::to_string(rep.trials) + "\n" +
                       "almost-shattering successes = " + std::to_string(rep.successes) +
                       " (rate " + fmt(rep.success_rate) + ")\n";
    if (rep.first_success_seed) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%#018llx",
                      static_cast<unsigned long long>(*rep.first_success_seed));
        text += std::string("first success: sample seed ") + buf + "\n";
    }
    emit(ctx, doc, text);
    return 0;
}

int run_lll(const Context& ctx, int d_min, int d_max) {
    if (d_min > d_max)
        throw vcsat::InvalidInputError("--d-min must not exceed --d-max");
    ordered_json doc = base_doc("lll");
    doc["parameters"] = {{"d_min", d_min}, {"d_max", d_max}};
    ordered_json results = ordered_json::array();
    std::string text;
    for (int d = d_min; d <= d_max; ++d) {
        const vcsat::LllEvaluation ev = vcsat::lll_evaluate(d);
        ordered_json row;
        row["d"] = d;
        row["holds"] = ev.holds;
        row["log_margin_lo"] = ev.log_margin_lo;
        row["log_margin_hi"] = ev.log_margin_hi;
        row["exponents"] = ev.exponents;
        results.push_back(std::move(row));
        text += "d=" + std::to_string(d) + " holds=" + (ev.holds ? "yes" : "no") +
                " log_margin=[" + fmt(ev.log_margin_lo) + "," + fmt(ev.log_margin_hi) +
                "]\n";
    }
    doc["results"] = results;
    emit(ctx, doc, text);
    return 0;
}

int run_sumset(const Context& ctx, int modulus, const std::string& set_text, int s) {
    std::vector<int> values;
    std::size_t pos = 0;
    while (pos <= set_text.size()) {
        const std::size_t comma = std::min(set_text.find(',', pos), set_text.size());
        try {
            std::size_t used = 0;
            const std::string tok = set_text.substr(pos, comma - pos);
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            values.push_back(v);
        } catch (const std::exception&) {
            throw vcsat::InvalidInputError("malformed residue list \"" + set_text + "\"");
        }
        pos = comma + 1;
    }
    const vcsat::ResidueSet a = vcsat::ResidueSet::from_values(modulus, values);
    const vcsat::ResidueSet result = vcsat::restricted_sumset(a, s);
    ordered_json doc = base_doc("sumset");
    doc["parameters"] = {{"modulus", modulus}, {"set", a.values()}, {"s", s}};
    doc["result"] = result.values();
    doc["size"] = result.size();
    emit(ctx, doc,
         result.to_string() + "\nsize = " + std::to_string(result.size()) + "\n");
    return 0;
}

int run_satnum(const Context& ctx, int n, int d) {
    const std::uint64_t v = vcsat::min_saturated_size(n, d);
    ordered_json doc = base_doc("satnum");
    doc["parameters"] = {{"n", n}, {"d", d}};
    doc["min_size"] = v;
    emit(ctx, doc,
         "smallest " + std::to_string(d) + "-saturated family over [" + std::to_string(n) +
             "] has " + std::to_string(v) + " sets\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct, extend, and exhaustively verify small saturated set "
                 "families of bounded VC dimension"};
    app.require_subcommand(1);

    Context ctx;
    app.add_option("--report", ctx.report, "output form")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();

    int exit_code = 0;

    // construct
    int c_d = 0, c_n = 0;
    std::string c_out;
    CLI::App* construct = app.add_subcommand("construct", "build a saturated family");
    construct->add_option("--d", c_d, "target vc + 1")->required();
    construct->add_option("--n", c_n, "ground set size")->required();
    construct->add_option("--out", c_out, "write the family to this file");
    construct->callback([&] { exit_code = run_construct(ctx, c_d, c_n, c_out); });

    // verify
    std::string v_family, v_check;
    CLI::App* verify = app.add_subcommand("verify", "check a family file");
    verify->add_option("--family", v_family, "family file")->required();
    verify->add_option("--check", v_check, "property to check")
        ->required()
        ->check(CLI::IsMember({"vc", "saturation", "almost-shatter", "conditions"}));
    verify->callback([&] { exit_code = run_verify(ctx, v_family, v_check); });

    // search-x
    int x_d = 0;
    CLI::App* search = app.add_subcommand("search-x", "enumerate valid residue sets");
    search->add_option("--d", x_d, "half the ground size")->required();
    search->callback([&] { exit_code = run_search_x(ctx, x_d); });

    // sample
    int s_d = 0;
    std::uint64_t s_seed = 0, s_trials = 0;
    CLI::App* sample = app.add_subcommand("sample", "random pair families, verified");
    sample->add_option("--d", s_d, "half the ground size")->required();
    sample->add_option("--seed", s_seed, "base seed")->required();
    sample->add_option("--trials", s_trials, "number of samples")->required();
    sample->callback([&] { exit_code = run_sample(ctx, s_d, s_seed, s_trials); });

    // lll
    int l_min = 0, l_max = 0;
    CLI::App* lll = app.add_subcommand("lll", "evaluate the dimension-threshold inequality");
    lll->add_option("--d-min", l_min, "first d")->required();
    lll->add_option("--d-max", l_max, "last d")->required();
    lll->callback([&] { exit_code = run_lll(ctx, l_min, l_max); });

    // extend
    std::string e_family, e_out;
    int e_element = 0, e_n = 0;
    CLI::App* extend = app.add_subcommand("extend", "duplicate an element up to a larger ground set");
    extend->add_option("--family", e_family, "family file")->required();
    extend->add_option("--element", e_element, "element to duplicate")->required();
    extend->add_option("--n", e_n, "new ground set size")->required();
    extend->add_option("--out", e_out, "write the family to this file");
    extend->callback([&] { exit_code = run_extend(ctx, e_family, e_element, e_n, e_out); });

    // sumset
    int m_modulus = 0, m_s = 0;
    std::string m_set;
    CLI::App* sumset = app.add_subcommand("sumset", "restricted sumset of a residue set");
    sumset->add_option("--modulus", m_modulus, "modulus")->required();
    sumset->add_option("--set", m_set, "comma-separated residues")->required();
    sumset->add_option("--s", m_s, "number of summands")->required();
    sumset->callback([&] { exit_code = run_sumset(ctx, m_modulus, m_set, m_s); });

    // satnum
    int t_n = 0, t_d = 0;
    CLI::App* satnum = app.add_subcommand("satnum", "smallest saturated family size, brute force");
    satnum->add_option("--n", t_n, "ground set size")->required();
    satnum->add_option("--d", t_d, "target vc")->required();
    satnum->callback([&] { exit_code = run_satnum(ctx, t_n, t_d); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const vcsat::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vcsat::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const vcsat::IndeterminateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const vcsat::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vcsat::InternalConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

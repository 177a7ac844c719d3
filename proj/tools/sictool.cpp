#include "sic/clifford.hpp"
#include "sic/json_io.hpp"
#include "sic/number_theory.hpp"
#include "sic/overlaps.hpp"
#include "sic/recognition.hpp"
#include "sic/wh_group.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

constexpr const char* kToolVersion = "0.1.0";

// 0 = success, 1 = domain/usage error, 2 = unconverged or uncertified result
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnconverged = 2;

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << sic::dump_deterministic(j);
    else
        sic::write_json_file(out_path, j);
}

json manifest(const std::string& command, json config) {
    json m;
    m["command"] = command;
    m["config"] = std::move(config);
    m["version"] = kToolVersion;
    return m;
}

json symplectic_json(const sic::SymplecticMatrix& f) {
    return json::array({json::array({f.a, f.b}), json::array({f.c, f.e})});
}

sic::SymmetryType parse_eigenspace(const std::string& s, bool& restrict_space) {
    restrict_space = true;
    if (s == "z") return sic::SymmetryType::type_z;
    if (s == "a") return sic::SymmetryType::type_a;
    restrict_space = false;
    return sic::SymmetryType::unknown;
}

int cmd_search(int d, uint64_t seed, int bits, int max_restarts, double target_residual,
               const std::string& eigenspace, const std::string& out) {
    sic::SearchConfig cfg;
    cfg.rng_seed = seed;
    cfg.polish_precision_bits = bits;
    cfg.max_restarts = max_restarts;
    cfg.target_residual = target_residual;
    cfg.eigenspace_kind = parse_eigenspace(eigenspace, cfg.eigenspace_restriction);

    sic::DimensionContext ctx = sic::make_context(d, bits);
    sic::Fiducial f = sic::search(ctx, cfg);

    json j = sic::fiducial_to_json(f);
    j["manifest"] = manifest("search", {{"d", d},
                                        {"seed", seed},
                                        {"bits", bits},
                                        {"max_restarts", max_restarts},
                                        {"target_residual", target_residual},
                                        {"eigenspace", eigenspace}});
    emit(j, out);
    if (!f.converged) {
        std::cerr << "search: no fiducial below target residual; best residual "
                  << sic::real_to_string(f.residual) << "\n";
        return kExitUnconverged;
    }
    return kExitOk;
}

int cmd_verify(const std::string& input, double target_residual, const std::string& out) {
    sic::Fiducial f = sic::fiducial_from_json(sic::read_json_file(input));
    sic::DimensionContext ctx = sic::make_context(f.dimension, f.precision_bits);
    sic::PrecisionGuard guard(f.precision_bits);
    sic::Real res = sic::sic_residual(ctx, f.vector);
    sic::Real fp = sic::frame_potential(ctx, f.vector);
    sic::Real fp_min = sic::Real(2 * f.dimension) / (f.dimension + 1);

    bool ok = res < sic::Real(target_residual);
    json j;
    j["d"] = f.dimension;
    j["residual"] = sic::real_to_string(res);
    j["frame_potential"] = sic::real_to_string(fp);
    j["frame_potential_excess"] = sic::real_to_string(fp - fp_min);
    j["converged"] = ok;
    j["manifest"] = manifest("verify", {{"input", input},
                                        {"target_residual", target_residual}});
    emit(j, out);
    if (!ok) {
        std::cerr << "verify: residual " << sic::real_to_string(res)
                  << " exceeds target " << target_residual << "\n";
        return kExitUnconverged;
    }
    return kExitOk;
}

int cmd_overlaps(const std::string& input, const std::string& out) {
    sic::Fiducial f = sic::fiducial_from_json(sic::read_json_file(input));
    sic::DimensionContext ctx = sic::make_context(f.dimension, f.precision_bits);
    sic::PrecisionGuard guard(f.precision_bits);
    f.residual = sic::sic_residual(ctx, f.vector);
    if (f.residual >= 1e-8) {
        std::cerr << "overlaps: fiducial residual "
                  << sic::real_to_string(f.residual) << " too large\n";
        return kExitUnconverged;
    }
    sic::OverlapTable t = sic::compute_overlaps(ctx, f);
    json j = sic::overlaps_to_json(t);
    j["manifest"] = manifest("overlaps", {{"input", input}});
    emit(j, out);
    return kExitOk;
}

int cmd_stabilizer(const std::string& input, const std::string& out) {
    sic::Fiducial f = sic::fiducial_from_json(sic::read_json_file(input));
    sic::DimensionContext ctx = sic::make_context(f.dimension, f.precision_bits);
    sic::PrecisionGuard guard(f.precision_bits);
    f.residual = sic::sic_residual(ctx, f.vector);
    if (f.residual >= 1e-8) {
        std::cerr << "stabilizer: fiducial residual "
                  << sic::real_to_string(f.residual) << " too large\n";
        return kExitUnconverged;
    }
    sic::Real tol = sic::Real(1000) * f.residual;

    sic::StabilityReport rep = sic::stability_group(ctx, f, tol);
    sic::OverlapTable t = sic::compute_overlaps(ctx, f);
    sic::OverlapPartition part = sic::overlap_orbit_partition(ctx, t, rep, tol);

    json j;
    j["d"] = f.dimension;
    json sym = json::array();
    for (const auto& m : rep.symplectic_stabilizers) sym.push_back(symplectic_json(m));
    j["symplectic_stabilizers"] = std::move(sym);
    json stb = json::array();
    for (const auto& m : rep.overlap_stabilizers) stb.push_back(symplectic_json(m));
    j["overlap_stabilizers"] = std::move(stb);
    j["centred"] = rep.centred;
    j["canonical_order3_present"] = rep.canonical_order3_present;
    j["symplectic_stabilizer_cyclic"] = sic::is_cyclic_group(
        sic::reduce_mod_d(rep.symplectic_stabilizers, f.dimension), f.dimension);
    json parts = json::array();
    for (const auto& p : part.parts) {
        json one = json::array();
        for (const auto& idx : p) one.push_back(json::array({idx.p1, idx.p2}));
        parts.push_back(std::move(one));
    }
    j["orbit_partition"] = std::move(parts);
    j["orbit_violations"] = part.violations;
    j["manifest"] = manifest("stabilizer", {{"input", input}});
    emit(j, out);
    return kExitOk;
}

int cmd_tower(int64_t D_flag, int64_t d_flag, int count, bool use_dprime,
              const std::string& out) {
    sic::Int D;
    if (D_flag > 0) {
        D = D_flag;
    } else if (d_flag > 0) {
        int64_t base = use_dprime ? sic::dprime(d_flag) : d_flag;
        D = sic::sic_discriminant(base).D;
    } else {
        throw std::domain_error("tower: provide --D or --d");
    }

    sic::DimensionSequence seq = sic::dimension_sequence(D, count);
    std::vector<sic::Tower> towers = sic::dimension_towers(seq, 0);

    json j;
    j["D"] = D.str();
    j["d1"] = seq.d1.str();
    json terms = json::array(), ms = json::array();
    for (const auto& t : seq.terms) terms.push_back(t.str());
    for (const auto& m : seq.m_values) ms.push_back(m.str());
    j["terms"] = std::move(terms);
    j["m"] = std::move(ms);
    json tw = json::array();
    for (const auto& t : towers) {
        json chain = json::array();
        for (const auto& x : t.chain) chain.push_back(x.str());
        tw.push_back(std::move(chain));
    }
    j["towers"] = std::move(tw);
    j["manifest"] = manifest("tower", {{"D", D.str()},
                                       {"count", count},
                                       {"use_dprime", use_dprime}});
    emit(j, out);

    std::ostream& tab = out.empty() ? std::cerr : std::cout;
    tab << "D = " << D << ", d_1 = " << seq.d1 << "\n";
    tab << "  j :  d_j (m_j)\n";
    for (size_t i = 0; i < seq.terms.size(); ++i)
        tab << "  " << i + 1 << " :  " << seq.terms[i] << " (" << seq.m_values[i] << ")\n";
    tab << "towers:\n";
    for (const auto& t : towers) {
        tab << "  ";
        for (size_t i = 0; i < t.chain.size(); ++i)
            tab << (i ? " | " : "") << t.chain[i];
        tab << "\n";
    }
    return kExitOk;
}

json poly_entry_json(const sic::DisplacementIndex& p, const sic::MinimalPolynomial& poly) {
    json e;
    e["p"] = json::array({p.p1, p.p2});
    if (poly.found) {
        json coeffs = json::array();
        for (const auto& c : poly.coefficients) coeffs.push_back(c.str());
        e["coeffs"] = std::move(coeffs);
        e["residual"] = sic::real_to_string(poly.residual);
    } else {
        e["coeffs"] = nullptr;
        e["residual"] = nullptr;
    }
    e["monic"] = poly.certified_monic;
    e["unit"] = poly.certified_unit;
    return e;
}

int cmd_recognize(const std::string& input, int max_degree, int bits,
                  const std::string& out) {
    json in = sic::read_json_file(input);
    sic::RecognitionConfig cfg;
    cfg.max_degree = max_degree;
    cfg.precision_bits = bits;

    json j;
    json per_phase = json::array();
    int total = 0, recognized = 0, units = 0, integers = 0;
    std::map<std::vector<sic::Int>, int> distinct;

    if (in.contains("vector")) {
        // fiducial file: re-polish internally, recognize with the
        // double-precision recheck
        sic::Fiducial f = sic::fiducial_from_json(in);
        sic::DimensionContext ctx = sic::make_context(f.dimension, bits);
        sic::PhaseRecognitionReport rep = sic::recognize_overlap_phases(ctx, f, cfg);
        for (const auto& e : rep.per_phase) per_phase.push_back(poly_entry_json(e.p, e.poly));
        total = rep.total;
        recognized = rep.recognized;
        units = rep.certified_units;
        integers = rep.certified_integers;
        distinct = rep.distinct_polynomials;
    } else {
        // overlap-table file: phases as stored, no recheck available
        sic::OverlapTable t = sic::overlaps_from_json(in);
        cfg.precision_bits = std::min(bits, t.precision_bits);
        sic::PrecisionGuard guard(cfg.precision_bits + 64);
        for (const auto& [p, phase] : t.phases) {
            sic::MinimalPolynomial poly = sic::recognize_algebraic(phase, cfg);
            ++total;
            if (poly.found) {
                ++recognized;
                if (poly.certified_monic) ++integers;
                if (poly.certified_unit) ++units;
                ++distinct[poly.coefficients];
            }
            per_phase.push_back(poly_entry_json(p, poly));
        }
    }

    j["per_phase"] = std::move(per_phase);
    json summary;
    summary["total"] = total;
    summary["recognized"] = recognized;
    summary["certified_integers"] = integers;
    summary["certified_units"] = units;
    json dp = json::array();
    for (const auto& [coeffs, n] : distinct) {
        json cs = json::array();
        for (const auto& c : coeffs) cs.push_back(c.str());
        dp.push_back(json{{"coeffs", std::move(cs)}, {"count", n}});
    }
    summary["distinct_polynomials"] = std::move(dp);
    j["summary"] = std::move(summary);
    j["manifest"] = manifest("recognize", {{"input", input},
                                           {"max_degree", max_degree},
                                           {"bits", bits}});
    emit(j, out);

    if (units < total) {
        std::cerr << "recognize: " << total - units << " of " << total
                  << " phases not certified as units\n";
        return kExitUnconverged;
    }
    return kExitOk;
}

int cmd_info(int d, const std::string& out) {
    sic::DimensionContext ctx = sic::make_context(d, 64);
    json j;
    j["d"] = d;
    j["d_prime"] = ctx.d_prime;
    if (d >= 4) j["D"] = sic::sic_discriminant(d).D.str();
    j["F_z"] = symplectic_json(sic::zauner_matrix(ctx));
    if (d % 3 == 0) j["F_a"] = symplectic_json(sic::fa_matrix(ctx));
    j["manifest"] = manifest("info", {{"d", d}});
    emit(j, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIC-POVM toolkit: fiducial search, overlap analysis, "
                 "dimension towers, algebraic recognition"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    int d = 0;
    uint64_t seed = 1;
    int bits = 256;
    int max_restarts = 50;
    double target_residual = 1e-12;
    std::string eigenspace = "z";
    int max_degree = 24;
    bool use_dprime = false;
    int64_t D_flag = 0, d_flag = 0;
    int count = 12;
    std::string input, out;

    auto add_bits = [&](CLI::App* c) {
        c->add_option("--bits", bits, "working precision in bits")
            ->envname("SICTOOL_BITS");
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", out, "write JSON artifact here instead of stdout");
    };

    CLI::App* c_search = app.add_subcommand("search", "search for a fiducial vector");
    c_search->add_option("d", d, "Hilbert space dimension")->required();
    c_search->add_option("--seed", seed, "RNG seed");
    c_search->add_option("--max-restarts", max_restarts, "coarse search restarts");
    c_search->add_option("--target-residual", target_residual, "convergence target");
    c_search->add_option("--eigenspace", eigenspace, "restriction: z, a, or none")
        ->check(CLI::IsMember({"z", "a", "none"}));
    add_bits(c_search);
    add_out(c_search);

    CLI::App* c_verify = app.add_subcommand("verify", "recheck a fiducial file");
    c_verify->add_option("file", input, "fiducial JSON file")->required();
    c_verify->add_option("--target-residual", target_residual, "acceptance bound");
    add_out(c_verify);

    CLI::App* c_overlaps = app.add_subcommand("overlaps", "overlap table of a fiducial");
    c_overlaps->add_option("file", input, "fiducial JSON file")->required();
    add_out(c_overlaps);

    CLI::App* c_stab = app.add_subcommand("stabilizer", "symplectic stability group");
    c_stab->add_option("file", input, "fiducial JSON file")->required();
    add_out(c_stab);

    CLI::App* c_tower = app.add_subcommand("tower", "dimension sequence and towers");
    c_tower->add_option("--D", D_flag, "square-free discriminant");
    c_tower->add_option("--d", d_flag, "derive the discriminant from a dimension");
    c_tower->add_option("--count", count, "number of terms");
    c_tower->add_flag("--use-dprime", use_dprime,
                      "derive the discriminant from d' instead of d");
    add_out(c_tower);

    CLI::App* c_rec = app.add_subcommand("recognize", "minimal polynomials of phases");
    c_rec->add_option("--input", input, "fiducial or overlap JSON file")->required();
    c_rec->add_option("--max-degree", max_degree, "degree cap");
    add_bits(c_rec);
    add_out(c_rec);

    CLI::App* c_info = app.add_subcommand("info", "dimension context summary");
    c_info->add_option("d", d, "Hilbert space dimension")->required();
    add_out(c_info);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_search->parsed())
            return cmd_search(d, seed, bits, max_restarts, target_residual, eigenspace, out);
        if (c_verify->parsed()) return cmd_verify(input, target_residual, out);
        if (c_overlaps->parsed()) return cmd_overlaps(input, out);
        if (c_stab->parsed()) return cmd_stabilizer(input, out);
        if (c_tower->parsed()) return cmd_tower(D_flag, d_flag, count, use_dprime, out);
        if (c_rec->parsed()) return cmd_recognize(input, max_degree, bits, out);
        if (c_info->parsed()) return cmd_info(d, out);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

#include "sic/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace sic {

namespace {

void check_version(const nlohmann::json& j) {
    int v = j.value("format_version", 1);
    if (v > kFormatVersion)
        throw std::runtime_error("file format version " + std::to_string(v) +
                                 " is newer than supported version " +
                                 std::to_string(kFormatVersion));
}

nlohmann::json complex_to_json(const Complex& z) {
    return nlohmann::json::array({real_to_string(z.re), real_to_string(z.im)});
}

Complex complex_from_json(const nlohmann::json& j) {
    return Complex(real_from_string(j.at(0).get<std::string>()),
                   real_from_string(j.at(1).get<std::string>()));
}

std::string symmetry_to_string(SymmetryType s) {
    switch (s) {
        case SymmetryType::type_z: return "z";
        case SymmetryType::type_a: return "a";
        default: return "unknown";
    }
}

SymmetryType symmetry_from_string(const std::string& s) {
    if (s == "z") return SymmetryType::type_z;
    if (s == "a") return SymmetryType::type_a;
    if (s == "unknown") return SymmetryType::unknown;
    throw std::runtime_error("unknown symmetry_type: " + s);
}

}  // namespace

nlohmann::json fiducial_to_json(const Fiducial& f) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["d"] = f.dimension;
    j["precision_bits"] = f.precision_bits;
    nlohmann::json vec = nlohmann::json::array();
    for (const Complex& z : f.vector) vec.push_back(complex_to_json(z));
    j["vector"] = std::move(vec);
    j["residual"] = real_to_string(f.residual);
    j["seed"] = f.seed;
    j["symmetry_type"] = symmetry_to_string(f.symmetry_type);
    return j;
}

Fiducial fiducial_from_json(const nlohmann::json& j) {
    check_version(j);
    Fiducial f;
    f.dimension = j.at("d").get<int>();
    f.precision_bits = j.at("precision_bits").get<int>();
    PrecisionGuard guard(f.precision_bits);
    for (const auto& e : j.at("vector")) f.vector.push_back(complex_from_json(e));
    if (static_cast<int>(f.vector.size()) != f.dimension)
        throw std::runtime_error("fiducial file: vector length does not match d");
    f.residual = real_from_string(j.at("residual").get<std::string>());
    f.seed = j.at("seed").get<uint64_t>();
    f.symmetry_type = symmetry_from_string(j.at("symmetry_type").get<std::string>());
    f.converged = true;
    return f;
}

nlohmann::json overlaps_to_json(const OverlapTable& t) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["d"] = t.d;
    j["precision_bits"] = t.precision_bits;
    j["residual"] = real_to_string(t.residual);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [p, overlap] : t.entries) {
        nlohmann::json e;
        e["p"] = {p.p1, p.p2};
        e["overlap"] = complex_to_json(overlap);
        e["phase"] = complex_to_json(t.phases.at(p));
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

OverlapTable overlaps_from_json(const nlohmann::json& j) {
    check_version(j);
    OverlapTable t;
    t.d = j.at("d").get<int>();
    t.d_prime = t.d % 2 == 0 ? 2 * t.d : t.d;
    t.precision_bits = j.value("precision_bits", 256);
    PrecisionGuard guard(t.precision_bits);
    t.residual = j.contains("residual")
                     ? real_from_string(j.at("residual").get<std::string>())
                     : Real(0);
    for (const auto& e : j.at("entries")) {
        DisplacementIndex p{e.at("p").at(0).get<int>(),
                            e.at("p").at(1).get<int>()};
        t.entries[p] = complex_from_json(e.at("overlap"));
        t.phases[p] = complex_from_json(e.at("phase"));
    }
    return t;
}

std::string dump_deterministic(const nlohmann::json& j) {
    // nlohmann::json keeps object keys sorted; two-space indent, trailing newline
    return j.dump(2) + "\n";
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << dump_deterministic(j);
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return nlohmann::json::parse(in);  // throws with byte position on bad input
}

}  // namespace sic

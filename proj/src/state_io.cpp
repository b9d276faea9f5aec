#include "geodiv/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace geodiv {

namespace {

using nlohmann::json;

constexpr double kAdmissionTol = 1e-9;

ComplexMatrix matrix_from_parts(const json& re, const json& im, std::size_t dim) {
    if (!re.is_array() || re.size() != dim || !im.is_array() || im.size() != dim)
        throw DomainError("state file: re/im must be " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json& rrow = re.at(i);
        const json& irow = im.at(i);
        if (rrow.size() != dim || irow.size() != dim)
            throw DomainError("state file: re/im rows must have " + std::to_string(dim) +
                              " entries");
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = Complex(rrow.at(j).get<double>(), irow.at(j).get<double>());
    }
    return m;
}

LoadedState parse_state_json(const json& doc) {
    const std::string kind = doc.at("kind").get<std::string>();
    LoadedState out{};
    if (kind == "simplex") {
        out.kind = StateKind::Simplex;
        out.simplex = ProbabilityVector::renormalized(doc.at("p").get<std::vector<double>>(),
                                                      kAdmissionTol);
    } else if (kind == "density") {
        out.kind = StateKind::Density;
        const auto dim = doc.at("dim").get<std::size_t>();
        const ComplexMatrix m = matrix_from_parts(doc.at("re"), doc.at("im"), dim);
        out.density =
            DensityMatrix::renormalized(HermitianMatrix(m, kAdmissionTol), kAdmissionTol);
    } else if (kind == "multiqubit") {
        out.kind = StateKind::MultiQubit;
        const auto n = doc.at("n").get<std::size_t>();
        if (n < 1 || n > 8)
            throw DomainError("state file: multiqubit n must be in [1, 8]");
        const std::size_t dim = std::size_t{1} << n;
        const ComplexMatrix m = matrix_from_parts(doc.at("re"), doc.at("im"), dim);
        out.multiqubit = MultiQubitState(
            n, DensityMatrix::renormalized(HermitianMatrix(m, kAdmissionTol), kAdmissionTol));
    } else if (kind == "joint") {
        out.kind = StateKind::Joint;
        ConfigurationSpace space(doc.at("cards").get<std::vector<std::size_t>>());
        out.joint = JointDistribution(
            std::move(space), ProbabilityVector::renormalized(
                                  doc.at("p").get<std::vector<double>>(), kAdmissionTol));
    } else {
        throw DomainError("state file: unknown kind \"" + kind + "\"");
    }
    return out;
}

json matrix_to_parts(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

LoadedState parse_state_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("state file: invalid JSON: ") + e.what());
    }
    try {
        return parse_state_json(doc);
    } catch (const json::exception& e) {
        throw DomainError(std::string("state file: malformed document: ") + e.what());
    }
}

LoadedState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("state file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_text(buf.str());
}

std::string serialize_simplex(const ProbabilityVector& p) {
    return json{{"kind", "simplex"}, {"p", p.weights()}}.dump();
}

std::string serialize_density(const DensityMatrix& rho) {
    json doc = matrix_to_parts(rho.mat());
    doc["kind"] = "density";
    doc["dim"] = rho.dim();
    return doc.dump();
}

std::string serialize_multiqubit(const MultiQubitState& rho) {
    json doc = matrix_to_parts(rho.state.mat());
    doc["kind"] = "multiqubit";
    doc["n"] = rho.n_sites;
    return doc.dump();
}

std::string serialize_joint(const JointDistribution& p) {
    return json{{"kind", "joint"},
                {"cards", p.space().cardinalities()},
                {"p", p.probabilities().weights()}}
        .dump();
}

std::string serialize_state(const LoadedState& state) {
    switch (state.kind) {
        case StateKind::Simplex: return serialize_simplex(*state.simplex);
        case StateKind::Density: return serialize_density(*state.density);
        case StateKind::MultiQubit: return serialize_multiqubit(*state.multiqubit);
        case StateKind::Joint: return serialize_joint(*state.joint);
    }
    throw DomainError("serialize_state: invalid kind");
}

}  // namespace geodiv

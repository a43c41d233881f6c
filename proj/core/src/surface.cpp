#include "logdelta/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace logdelta {

using nlohmann::json;

DivisorClass& DivisorClass::operator+=(const DivisorClass& rhs) {
    if (rank() != rhs.rank()) throw dimension_error("divisor class rank mismatch in +");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += rhs.coeffs[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& rhs) {
    if (rank() != rhs.rank()) throw dimension_error("divisor class rank mismatch in -");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= rhs.coeffs[i];
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Rat& s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}

std::string fiber_config_str(FiberConfig cfg) {
    switch (cfg) {
        case FiberConfig::q1_singular: return "q1-singular";
        case FiberConfig::q2_singular: return "q2-singular";
        case FiberConfig::both_singular: return "both-singular";
        case FiberConfig::neither: return "neither-singular";
    }
    throw internal_error("unknown fiber config");
}

FiberConfig parse_fiber_config(const std::string& text) {
    if (text == "q1-singular" || text == "q1-sing") return FiberConfig::q1_singular;
    if (text == "q2-singular" || text == "q2-sing") return FiberConfig::q2_singular;
    if (text == "both-singular" || text == "both") return FiberConfig::both_singular;
    if (text == "neither-singular" || text == "neither") return FiberConfig::neither;
    throw domain_error("unknown fiber configuration \"" + text + "\"");
}

SurfaceModel::SurfaceModel(std::string id, std::vector<std::string> basis_names,
                           std::vector<std::vector<Rat>> gram, std::vector<CurveRecord> curves,
                           DivisorClass canonical)
    : id_(std::move(id)),
      basis_(std::move(basis_names)),
      gram_(std::move(gram)),
      curves_(std::move(curves)),
      canonical_(std::move(canonical)) {
    const std::size_t r = basis_.size();
    if (gram_.size() != r) throw dimension_error("gram matrix does not match basis rank");
    for (const auto& row : gram_)
        if (row.size() != r) throw dimension_error("gram matrix is not square");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (gram_[i][j] != gram_[j][i]) throw precondition_error("gram matrix not symmetric");
    if (canonical_.rank() != r) throw dimension_error("canonical class rank mismatch");
    for (const auto& c : curves_)
        if (c.cls.rank() != r) throw dimension_error("curve class rank mismatch: " + c.name);
}

const CurveRecord& SurfaceModel::curve(const std::string& name) const {
    if (const CurveRecord* c = find_curve(name)) return *c;
    throw domain_error("no curve named \"" + name + "\" on " + id_);
}

const CurveRecord* SurfaceModel::find_curve(const std::string& name) const {
    for (const auto& c : curves_)
        if (c.name == name) return &c;
    return nullptr;
}

DivisorClass SurfaceModel::basis_class(const std::string& name) const {
    auto it = std::find(basis_.begin(), basis_.end(), name);
    if (it == basis_.end()) throw domain_error("no basis element named \"" + name + "\"");
    DivisorClass d = DivisorClass::zero(rank());
    d.coeffs[static_cast<std::size_t>(it - basis_.begin())] = 1;
    return d;
}

Rat SurfaceModel::intersect(const DivisorClass& a, const DivisorClass& b) const {
    if (a.rank() != rank() || b.rank() != rank())
        throw dimension_error("divisor class does not belong to " + id_);
    Rat total(0);
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a.coeffs[i] == 0) continue;
        Rat row(0);
        for (std::size_t j = 0; j < rank(); ++j)
            if (b.coeffs[j] != 0) row += gram_[i][j] * b.coeffs[j];
        total += a.coeffs[i] * row;
    }
    return total;
}

SurfaceModel SurfaceModel::with_curve(CurveRecord extra) const {
    SurfaceModel copy = *this;
    if (copy.find_curve(extra.name))
        throw precondition_error("curve \"" + extra.name + "\" already exists on " + id_);
    copy.curves_.push_back(std::move(extra));
    return copy;
}

std::string SurfaceModel::to_json() const {
    json j;
    j["id"] = id_;
    j["basis"] = basis_;
    json gram = json::array();
    for (const auto& row : gram_) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        gram.push_back(r);
    }
    j["gram"] = gram;
    json canon = json::array();
    for (const auto& v : canonical_.coeffs) canon.push_back(rat_str(v));
    j["canonical_class"] = canon;
    json curves = json::array();
    for (const auto& c : curves_) {
        json jc;
        jc["name"] = c.name;
        json cls = json::array();
        for (const auto& v : c.cls.coeffs) cls.push_back(rat_str(v));
        jc["class"] = cls;
        jc["self_intersection"] = rat_str(self_intersection(c.cls));
        jc["negative_candidate"] = c.negative_candidate;
        if (!c.contact_with_C.empty()) jc["contact_with_C"] = c.contact_with_C;
        if (c.ray) jc["ray"] = *c.ray;
        curves.push_back(jc);
    }
    j["curves"] = curves;
    return j.dump(2);
}

Scalar intersect(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& b) {
    return Scalar(model.intersect(a, b));
}

namespace {

DivisorClass make_class(std::size_t rank, std::initializer_list<std::pair<std::size_t, long>> parts) {
    DivisorClass d = DivisorClass::zero(rank);
    for (const auto& [idx, val] : parts) d.coeffs[idx] = val;
    return d;
}

}  // namespace

SurfaceModel preset_I9Bn(int n, FiberConfig fiber_config) {
    if (n < 1) throw precondition_error("preset I9B.n needs n >= 1");
    if (fiber_config == FiberConfig::both_singular && n < 2)
        throw precondition_error("both ramification points on singular fibers needs n >= 2");
    const std::size_t rank = 2 + static_cast<std::size_t>(n);

    std::vector<std::string> basis = {"H1", "H2"};
    for (int i = 1; i <= n; ++i) basis.push_back("E" + std::to_string(i));

    std::vector<std::vector<Rat>> gram(rank, std::vector<Rat>(rank, Rat(0)));
    gram[0][1] = gram[1][0] = 1;
    for (std::size_t i = 2; i < rank; ++i) gram[i][i] = -1;

    // K = -2H1 - 2H2 + sum E_i
    DivisorClass canonical = DivisorClass::zero(rank);
    canonical.coeffs[0] = -2;
    canonical.coeffs[1] = -2;
    for (std::size_t i = 2; i < rank; ++i) canonical.coeffs[i] = 1;

    // C = H1 + 2H2 - sum E_i
    DivisorClass c_class = DivisorClass::zero(rank);
    c_class.coeffs[0] = 1;
    c_class.coeffs[1] = 2;
    for (std::size_t i = 2; i < rank; ++i) c_class.coeffs[i] = -1;

    const bool q1_sing = fiber_config == FiberConfig::q1_singular || fiber_config == FiberConfig::both_singular;
    const bool q2_sing = fiber_config == FiberConfig::q2_singular || fiber_config == FiberConfig::both_singular;
    // Exceptional index hosting each singular ramification point.
    const int q1_exc = q1_sing ? 1 : 0;
    const int q2_exc = q2_sing ? (q1_sing ? 2 : 1) : 0;

    std::vector<CurveRecord> curves;
    CurveRecord c_rec{"C", c_class, n >= 5, {}, std::nullopt};
    curves.push_back(c_rec);
    for (int i = 1; i <= n; ++i) {
        const std::size_t ei = 1 + static_cast<std::size_t>(i);
        CurveRecord e{"E" + std::to_string(i), make_class(rank, {{ei, 1}}), true, {}, std::nullopt};
        CurveRecord f1{"H1-E" + std::to_string(i), make_class(rank, {{0, 1}, {ei, -1}}), true, {}, std::nullopt};
        CurveRecord f2{"H2-E" + std::to_string(i), make_class(rank, {{1, 1}, {ei, -1}}), true, {}, std::nullopt};
        if (i == q1_exc) {
            e.contact_with_C["q1"] = 1;
            f1.contact_with_C["q1"] = 1;
        }
        if (i == q2_exc) {
            e.contact_with_C["q2"] = 1;
            f1.contact_with_C["q2"] = 1;
        }
        curves.push_back(e);
        curves.push_back(f1);
        curves.push_back(f2);
    }
    // Ruling members through a ramification point on a smooth fiber: the
    // fiber itself (tangent to C) and the second-ruling member (transversal).
    auto add_smooth_point_curves = [&](const std::string& q) {
        CurveRecord l{"l_" + q, make_class(rank, {{0, 1}}), false, {{q, 2}}, std::nullopt};
        CurveRecord g{"g_" + q, make_class(rank, {{1, 1}}), false, {{q, 1}}, std::nullopt};
        curves.push_back(l);
        curves.push_back(g);
    };
    if (!q1_sing) add_smooth_point_curves("q1");
    if (!q2_sing) add_smooth_point_curves("q2");

    const std::string id = "I9B." + std::to_string(n) + ":" + fiber_config_str(fiber_config);
    return SurfaceModel(id, std::move(basis), std::move(gram), std::move(curves), std::move(canonical));
}

SurfaceModel preset_dP7_toric() {
    const std::size_t rank = 3;
    std::vector<std::string> basis = {"H1", "H2", "Ecls"};
    std::vector<std::vector<Rat>> gram(rank, std::vector<Rat>(rank, Rat(0)));
    gram[0][1] = gram[1][0] = 1;
    gram[2][2] = -1;

    DivisorClass canonical = make_class(rank, {{0, -2}, {1, -2}, {2, 1}});
    DivisorClass c_class = make_class(rank, {{0, 1}, {1, 2}, {2, -1}});

    std::vector<CurveRecord> curves;
    curves.push_back({"C", c_class, false, {}, std::nullopt});
    curves.push_back({"E1", make_class(rank, {{0, 1}, {2, -1}}), true, {}, 0});
    curves.push_back({"E", make_class(rank, {{2, 1}}), true, {}, 1});
    curves.push_back({"E2", make_class(rank, {{1, 1}, {2, -1}}), true, {}, 2});
    curves.push_back({"E1inf", make_class(rank, {{0, 1}}), false, {}, 3});
    curves.push_back({"E2inf", make_class(rank, {{1, 1}}), false, {}, 4});
    return SurfaceModel("dP7", std::move(basis), std::move(gram), std::move(curves), std::move(canonical));
}

SurfaceModel preset_by_id(const std::string& id) {
    if (id == "dP7") return preset_dP7_toric();
    const std::string prefix = "I9B.";
    if (id.rfind(prefix, 0) == 0) {
        const auto colon = id.find(':');
        if (colon == std::string::npos)
            throw domain_error("preset id \"" + id + "\" is missing its fiber configuration");
        const std::string num = id.substr(prefix.size(), colon - prefix.size());
        int n = 0;
        try {
            n = std::stoi(num);
        } catch (const std::exception&) {
            throw domain_error("bad n in preset id \"" + id + "\"");
        }
        return preset_I9Bn(n, parse_fiber_config(id.substr(colon + 1)));
    }
    throw domain_error("unknown preset id \"" + id + "\"");
}

DivisorClass log_anticanonical(const SurfaceModel& model, const Scalar& beta) {
    // -(K + (1-beta) C) = -K - C + beta C
    const Rat b = beta.rat();
    DivisorClass l = DivisorClass::zero(model.rank());
    const DivisorClass& k = model.canonical_class();
    const DivisorClass& c = model.curve("C").cls;
    for (std::size_t i = 0; i < model.rank(); ++i)
        l.coeffs[i] = -k.coeffs[i] - c.coeffs[i] + b * c.coeffs[i];
    return l;
}

bool log_fano_check(int n, const Scalar& beta) {
    if (!(Scalar(0) < beta && beta < Scalar(1))) return false;
    return (Scalar(make_rat(4 - n)) * beta + Scalar(2)).sign() > 0;
}

Scalar reduction_factor(int n, int n_prime, const Scalar& beta) {
    if (n_prime > n) throw precondition_error("reduction_factor: n' must not exceed n");
    if (n_prime < 1) throw precondition_error("reduction_factor: n' >= 1");
    if (!log_fano_check(n, beta) || !log_fano_check(n_prime, beta))
        throw precondition_error("reduction_factor: both (n, beta) and (n', beta) must be log Fano");
    const Scalar num = Scalar(make_rat(4 - n_prime)) * beta + Scalar(4);
    const Scalar den = Scalar(make_rat(4 - n)) * beta + Scalar(4);
    return num / den;
}

}  // namespace logdelta

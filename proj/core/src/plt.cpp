#include "logdelta/plt.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace logdelta {

using nlohmann::json;

void BranchData::validate() const {
    if (m < 1) throw precondition_error("branch data needs m >= 1");
    for (int i = 2; i <= m; ++i) {
        auto it = q.find(i);
        if (it == q.end()) throw precondition_error("branch data missing q(" + std::to_string(i) + ")");
        if (it->second < 0 || it->second > i - 2)
            throw precondition_error("branch data q(" + std::to_string(i) + ") out of range");
    }
    for (const auto& [i, _] : q)
        if (i < 2 || i > m) throw precondition_error("branch data has stray q index");
    // Each center beyond the first lies on the newest exceptional curve,
    // which meets exactly the strict transforms of the previous one and of
    // the curve recorded one step earlier. So q(i) is q(i-1) or i-2, and in
    // particular the q(i) = 0 prefix is exactly the free chain up to k.
    for (int i = 3; i <= m; ++i)
        if (q.at(i) != q.at(i - 1) && q.at(i) != i - 2)
            throw precondition_error("branch data is not realizable by a chain of points");
    const int kk = k();
    for (int i = 2; i <= kk; ++i)
        if (q.at(i) != 0) throw precondition_error("branch data is not of chain type: q(i) != 0 below k");
}

int BranchData::k() const {
    int kk = 1;
    for (int i = 2; i <= m; ++i)
        if (q.at(i) == 0) kk = i;
    return kk;
}

AbSequence ab_sequence(const BranchData& branch) {
    branch.validate();
    AbSequence seq;
    seq.pairs = {{1, 0}, {1, 1}};
    for (int i = 2; i <= branch.m; ++i) {
        const auto& prev = seq.pairs[static_cast<std::size_t>(i - 1)];
        const auto& jump = seq.pairs[static_cast<std::size_t>(branch.q.at(i))];
        seq.pairs.emplace_back(jump.first + prev.first, jump.second + prev.second);
    }
    seq.pairs.resize(static_cast<std::size_t>(branch.m) + 1);
    seq.a = seq.pairs.back().first;
    seq.b = seq.pairs.back().second;
    seq.k = branch.k();
    for (std::size_t i = 1; i < seq.pairs.size(); ++i)
        if (std::gcd(seq.pairs[i].first, seq.pairs[i].second) != 1)
            throw internal_error("ab recursion produced a non-coprime pair");
    const long ceil_ab = (seq.a + seq.b - 1) / seq.b;
    if (ceil_ab != seq.k) throw internal_error("ab recursion: k != ceil(a/b)");
    return seq;
}

Scalar log_discrepancy(long a, long b, int j_c, const Scalar& beta) {
    if (a < 1 || b < 1) throw precondition_error("log_discrepancy: need a, b >= 1");
    if (std::gcd(a, b) != 1) throw precondition_error("log_discrepancy: gcd(a, b) != 1");
    const long k = (a + b - 1) / b;
    if (j_c < 0 || j_c > static_cast<long>(k))
        throw precondition_error("log_discrepancy: j_C out of range");
    const long mu = std::min(static_cast<long>(j_c) * b, a);
    return Scalar(make_rat(a + b)) - Scalar(make_rat(mu)) * (Scalar(1) - beta);
}

long germ_multiplicity(int j_b, long a, long b) {
    if (j_b < 1) throw precondition_error("germ_multiplicity: j_B >= 1");
    if (a < 1 || b < 1) throw precondition_error("germ_multiplicity: a, b >= 1");
    return std::min(static_cast<long>(j_b) * b, a);
}

int PltCandidate::k() const {
    if (b < 1) throw precondition_error("candidate with b < 1");
    return static_cast<int>((a + b - 1) / b);
}

std::string PltCandidate::label() const {
    std::string s = "(" + std::to_string(a) + "," + std::to_string(b) + ") jC=" + std::to_string(j_c);
    if (!center.empty()) s += " at " + center;
    return s;
}

std::string PltCandidate::to_json() const {
    json j;
    j["a"] = a;
    j["b"] = b;
    j["jC"] = j_c;
    j["center"] = center;
    json germs_json = json::array();
    for (const auto& g : germs) germs_json.push_back({{"curve", g.curve}, {"j", g.j}});
    j["germs"] = germs_json;
    return j.dump();
}

bool plt_filter(const PltCandidate& cand, const Scalar& beta) {
    if (beta > Scalar(make_rat(1, 2)))
        throw precondition_error("plt_filter: stated only for beta <= 1/2");
    const int k = cand.k();
    if (cand.j_c != 0 && cand.j_c != 1 && cand.j_c != k) return false;
    for (const auto& g : cand.germs)
        if (g.j < 1 || g.j > k) return false;

    // Chain consistency. Germs are pairwise transversal except that a
    // contact-2 germ is tangent to the C germ.
    for (std::size_t i = 0; i < cand.germs.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.germs.size(); ++j) {
            const CurveGerm& gi = cand.germs[i];
            const CurveGerm& gj = cand.germs[j];
            const bool i_is_c = gi.curve == "C";
            const bool j_is_c = gj.curve == "C";
            const bool tangent = (i_is_c && gj.contact_with_C == 2) || (j_is_c && gi.contact_with_C == 2);
            if (tangent) {
                if ((gi.j >= 2) != (gj.j >= 2)) return false;
                if (gi.j >= 3 && gj.j >= 3) return false;
            } else {
                if (gi.j >= 2 && gj.j >= 2) return false;
            }
        }
    }
    return true;
}

SurfaceModel extract_model(const SurfaceModel& x_model, const PltCandidate& cand) {
    if (cand.a < 1 || cand.b < 1 || std::gcd(cand.a, cand.b) != 1)
        throw precondition_error("extract_model: (a, b) must be coprime positive");
    const int k = cand.k();
    for (const auto& g : cand.germs) {
        if (!x_model.find_curve(g.curve))
            throw precondition_error("extract_model: unknown germ curve " + g.curve);
        if (g.j < 1 || g.j > k) throw precondition_error("extract_model: germ j out of range");
        if (g.curve == "C" && g.j != cand.j_c)
            throw precondition_error("extract_model: C germ disagrees with j_C");
    }
    if (cand.j_c != 0) {
        const bool has_c_germ =
            std::any_of(cand.germs.begin(), cand.germs.end(),
                        [](const CurveGerm& g) { return g.curve == "C"; });
        if (!has_c_germ) throw precondition_error("extract_model: j_C > 0 without a C germ");
    }

    const std::size_t r = x_model.rank();
    std::vector<std::string> basis = x_model.basis_names();
    basis.push_back("F");

    const Rat ab = make_rat(cand.a) * make_rat(cand.b);
    std::vector<std::vector<Rat>> gram(r + 1, std::vector<Rat>(r + 1, Rat(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram[i][j] = x_model.gram()[i][j];
    gram[r][r] = make_rat(-1) / ab;

    auto lift = [&](const DivisorClass& d) {
        DivisorClass up = DivisorClass::zero(r + 1);
        for (std::size_t i = 0; i < r; ++i) up.coeffs[i] = d.coeffs[i];
        return up;
    };

    DivisorClass f_class = DivisorClass::zero(r + 1);
    f_class.coeffs[r] = 1;

    DivisorClass canonical = lift(x_model.canonical_class());
    canonical.coeffs[r] = make_rat(cand.a + cand.b - 1);

    std::vector<CurveRecord> curves;
    for (const auto& c : x_model.curves()) {
        CurveRecord rec = c;
        rec.cls = lift(c.cls);
        rec.ray.reset();
        for (const auto& g : cand.germs) {
            if (g.curve != c.name) continue;
            rec.cls.coeffs[r] = make_rat(-germ_multiplicity(g.j, cand.a, cand.b));
            break;
        }
        curves.push_back(std::move(rec));
    }
    CurveRecord f_rec{"F", f_class, true, {}, std::nullopt};
    curves.push_back(f_rec);

    SurfaceModel y("Y(" + x_model.id() + "; " + cand.label() + ")", std::move(basis),
                   std::move(gram), std::move(curves), std::move(canonical));

    // Re-derive negativity on Y: tangent germs can turn nef classes negative.
    std::vector<CurveRecord> flagged = y.curves();
    for (auto& c : flagged) c.negative_candidate = sign_of(y.self_intersection(c.cls)) < 0;
    return SurfaceModel(y.id(), y.basis_names(), y.gram(), std::move(flagged), y.canonical_class());
}

DivisorClass pullback_to_extraction(const SurfaceModel& y_model, const DivisorClass& on_x) {
    if (on_x.rank() + 1 != y_model.rank())
        throw dimension_error("pullback: expected a class of corank one");
    DivisorClass up = DivisorClass::zero(y_model.rank());
    for (std::size_t i = 0; i < on_x.rank(); ++i) up.coeffs[i] = on_x.coeffs[i];
    return up;
}

}  // namespace logdelta

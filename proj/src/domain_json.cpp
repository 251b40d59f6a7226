#include "frachardy/domain_json.hpp"

namespace frachardy {

using nlohmann::json;

namespace {

json vec_to_json(const Vec& v, int n) {
    json a = json::array();
    for (int i = 0; i < n; ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& a, int* n_out) {
    if (!a.is_array() || a.empty() || a.size() > 3)
        throw ParamError("domain json: coordinate array must have 1..3 entries");
    Vec v{};
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
    if (n_out) *n_out = static_cast<int>(a.size());
    return v;
}

} // namespace

json domain_to_json(const Domain& dom) {
    json j;
    j["type"] = dom.kind_name();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                j["a"] = s.a;
                j["b"] = s.b;
            } else if constexpr (std::is_same_v<T, IntervalUnion>) {
                json arr = json::array();
                for (const auto& iv : s.parts) arr.push_back({iv.a, iv.b});
                j["intervals"] = arr;
            } else if constexpr (std::is_same_v<T, Box>) {
                j["min"] = vec_to_json(s.lo, dom.n);
                j["max"] = vec_to_json(s.hi, dom.n);
            } else if constexpr (std::is_same_v<T, Ball>) {
                j["center"] = vec_to_json(s.center, dom.n);
                j["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                j["normal"] = vec_to_json(s.normal, dom.n);
                j["offset"] = s.offset;
            } else if constexpr (std::is_same_v<T, Polytope>) {
                json arr = json::array();
                for (const auto& f : s.facets)
                    arr.push_back({{"normal", vec_to_json(f.normal, dom.n)},
                                   {"offset", f.offset}});
                j["halfspaces"] = arr;
                j["interior_point"] = vec_to_json(s.interior_point, dom.n);
                j["bounded"] = s.bounded;
            } else {
                json arr = json::array();
                for (const auto& p : s.parts) arr.push_back(domain_to_json(p));
                j["parts"] = arr;
            }
        },
        dom.shape);
    return j;
}

Domain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ParamError("domain json: expected an object with a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "interval") {
        return make_interval(j.at("a").get<double>(), j.at("b").get<double>());
    }
    if (type == "interval_union") {
        std::vector<Interval> parts;
        for (const auto& iv : j.at("intervals")) {
            if (!iv.is_array() || iv.size() != 2)
                throw ParamError("interval_union json: each entry must be [a, b]");
            parts.push_back({iv[0].get<double>(), iv[1].get<double>()});
        }
        return make_interval_union(std::move(parts));
    }
    if (type == "box") {
        int n = 0, n2 = 0;
        const Vec lo = vec_from_json(j.at("min"), &n);
        const Vec hi = vec_from_json(j.at("max"), &n2);
        if (n != n2) throw ParamError("box json: min/max dimension mismatch");
        return make_box(n, lo, hi);
    }
    if (type == "ball") {
        int n = 0;
        const Vec c = vec_from_json(j.at("center"), &n);
        return make_ball(n, c, j.at("radius").get<double>());
    }
    if (type == "halfspace") {
        int n = 0;
        const Vec nu = vec_from_json(j.at("normal"), &n);
        return make_halfspace(n, nu, j.at("offset").get<double>());
    }
    if (type == "polytope") {
        int n = 0;
        const Vec ip = vec_from_json(j.at("interior_point"), &n);
        std::vector<HalfSpace> facets;
        for (const auto& f : j.at("halfspaces")) {
            int nf = 0;
            HalfSpace h;
            h.normal = vec_from_json(f.at("normal"), &nf);
            if (nf != n) throw ParamError("polytope json: facet dimension mismatch");
            h.offset = f.at("offset").get<double>();
            facets.push_back(h);
        }
        const bool bounded = j.value("bounded", true);
        return make_polytope(n, std::move(facets), ip, bounded);
    }
    if (type == "convex_union") {
        std::vector<Domain> parts;
        for (const auto& p : j.at("parts")) parts.push_back(domain_from_json(p));
        return make_convex_union(std::move(parts));
    }
    throw ParamError("domain json: unknown type \"" + type + "\"");
}

} // namespace frachardy

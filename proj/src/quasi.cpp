#include "poslab/quasi.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "poslab/errors.hpp"

namespace poslab {

SubsetFamily::SubsetFamily(int r, const std::vector<std::vector<int>>& members) : r_(r) {
    if (r_ < 2 || r_ > 31) throw PreconditionError("SubsetFamily: arity out of range");
    std::set<std::uint32_t> seen;
    for (const auto& m : members) {
        std::uint32_t mask = 0;
        for (int x : m) {
            if (x < 1 || x > r_) throw PreconditionError("SubsetFamily: element out of 1..r");
            mask |= std::uint32_t{1} << (x - 1);
        }
        if (mask == 0) throw PreconditionError("SubsetFamily: empty member");
        if (mask == (std::uint32_t{1} << r_) - 1)
            throw PreconditionError("SubsetFamily: member equals the full ground set");
        if (!seen.insert(mask).second)
            throw PreconditionError("SubsetFamily: duplicate member");
        masks_.push_back(mask);
    }
}

SubsetFamily SubsetFamily::from_masks(int r, std::vector<std::uint32_t> masks) {
    std::vector<std::vector<int>> members;
    for (auto mask : masks) {
        std::vector<int> m;
        for (int i = 0; i < r; i++)
            if (mask >> i & 1) m.push_back(i + 1);
        members.push_back(std::move(m));
    }
    return SubsetFamily(r, members);
}

std::vector<std::vector<int>> SubsetFamily::members() const {
    std::vector<std::vector<int>> out;
    for (auto mask : masks_) {
        std::vector<int> m;
        for (int i = 0; i < r_; i++)
            if (mask >> i & 1) m.push_back(i + 1);
        out.push_back(std::move(m));
    }
    return out;
}

std::string SubsetFamily::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& m : members()) j.push_back(m);
    return j.dump();
}

SubsetFamily SubsetFamily::from_json(int r, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("family JSON: ") + e.what());
    }
    if (!j.is_array()) throw IoError("family JSON: want array of arrays");
    std::vector<std::vector<int>> members;
    try {
        for (const auto& m : j) members.push_back(m.get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("family JSON: ") + e.what());
    }
    try {
        return SubsetFamily(r, members);
    } catch (const PreconditionError& e) {
        throw IoError(std::string("family JSON: ") + e.what());
    }
}

SubsetFamily closure(const SubsetFamily& q) {
    std::vector<char> in(std::size_t{1} << q.ground_arity(), 0);
    for (auto mask : q.masks())
        for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) in[sub] = 1;
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < in.size(); m++)
        if (in[m]) masks.push_back(m);
    return SubsetFamily::from_masks(q.ground_arity(), std::move(masks));
}

SubsetFamily tight_cycle_family(int r) {
    if (r < 3) throw PreconditionError("tight_cycle_family: arity must be >= 3");
    std::vector<std::uint32_t> masks;
    masks.push_back((std::uint32_t{1} << (r - 1)) - 1);  // {1..r-1}
    std::uint32_t full = (std::uint32_t{1} << r) - 1;
    for (std::uint32_t m = 1; m < full; m++)
        if (__builtin_popcount(m) == r - 2) masks.push_back(m);
    return SubsetFamily::from_masks(r, std::move(masks));
}

std::optional<VanishingCertificate> q_vanishing(const Hypergraph& h, const SubsetFamily& q) {
    const int r = h.uniformity();
    if (r != q.ground_arity())
        throw PreconditionError("q_vanishing: family arity must match hypergraph uniformity");
    if (r > 7) throw BudgetError("q_vanishing: uniformity above 7");
    if (h.edge_count() > 20) throw BudgetError("q_vanishing: more than 20 edges");

    std::vector<char> in_closure(std::size_t{1} << r, 0);
    for (auto mask : q.masks())
        for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) in_closure[sub] = 1;

    for (int star = 0; star < h.edge_count(); star++) {
        const auto& estar = h.edge(star);
        // vertex -> position within sorted e*, valid only for members of e*
        std::vector<int> pos(static_cast<size_t>(h.vertex_count()), -1);
        for (int i = 0; i < r; i++) pos[static_cast<size_t>(estar[static_cast<size_t>(i)])] = i;

        // position-set masks of the non-empty intersections, deduplicated
        std::vector<std::pair<int, std::uint32_t>> inters;  // (edge, positions of e* hit)
        for (int e = 0; e < h.edge_count(); e++) {
            if (e == star) continue;
            std::uint32_t m = 0;
            for (int u : h.edge(e))
                if (pos[static_cast<size_t>(u)] >= 0)
                    m |= std::uint32_t{1} << pos[static_cast<size_t>(u)];
            if (m) inters.emplace_back(e, m);
        }

        std::vector<int> phi(static_cast<size_t>(r));
        std::iota(phi.begin(), phi.end(), 1);  // phi[i] = image of position i
        do {
            bool ok = true;
            for (const auto& [e, m] : inters) {
                std::uint32_t image = 0;
                for (int i = 0; i < r; i++)
                    if (m >> i & 1)
                        image |= std::uint32_t{1} << (phi[static_cast<size_t>(i)] - 1);
                if (!in_closure[image]) { ok = false; break; }
            }
            if (!ok) continue;

            VanishingCertificate cert;
            cert.edge_index = star;
            cert.phi = phi;
            for (const auto& [e, m] : inters) {
                std::uint32_t image = 0;
                for (int i = 0; i < r; i++)
                    if (m >> i & 1)
                        image |= std::uint32_t{1} << (phi[static_cast<size_t>(i)] - 1);
                int member = -1;
                for (int qi = 0; qi < q.size(); qi++)
                    if ((image & ~q.masks()[static_cast<size_t>(qi)]) == 0) { member = qi; break; }
                cert.coverings.push_back({e, image, member});
            }
            return cert;
        } while (std::next_permutation(phi.begin(), phi.end()));
    }
    return std::nullopt;
}

bool validate_vanishing(const Hypergraph& h, const SubsetFamily& q,
                        const VanishingCertificate& cert) {
    const int r = h.uniformity();
    if (r != q.ground_arity()) return false;
    if (cert.edge_index < 0 || cert.edge_index >= h.edge_count()) return false;
    if (static_cast<int>(cert.phi.size()) != r) return false;
    std::uint32_t image_all = 0;
    for (int x : cert.phi) {
        if (x < 1 || x > r) return false;
        image_all |= std::uint32_t{1} << (x - 1);
    }
    if (__builtin_popcount(image_all) != r) return false;  // injective

    const auto& estar = h.edge(cert.edge_index);
    std::vector<int> pos(static_cast<size_t>(h.vertex_count()), -1);
    for (int i = 0; i < r; i++) pos[static_cast<size_t>(estar[static_cast<size_t>(i)])] = i;

    std::size_t ci = 0;
    for (int e = 0; e < h.edge_count(); e++) {
        if (e == cert.edge_index) continue;
        std::uint32_t image = 0;
        for (int u : h.edge(e))
            if (pos[static_cast<size_t>(u)] >= 0)
                image |= std::uint32_t{1}
                         << (cert.phi[static_cast<size_t>(pos[static_cast<size_t>(u)])] - 1);
        if (!image) continue;
        if (ci >= cert.coverings.size()) return false;
        const auto& cov = cert.coverings[ci++];
        if (cov.edge_index != e || cov.image_mask != image) return false;
        if (cov.member_index < 0 || cov.member_index >= q.size()) return false;
        if ((image & ~q.masks()[static_cast<size_t>(cov.member_index)]) != 0) return false;
    }
    return ci == cert.coverings.size();
}

HqResult build_hq(int r, const SubsetFamily& q) {
    if (r != q.ground_arity()) throw PreconditionError("build_hq: arity mismatch");
    if (r > 6) throw BudgetError("build_hq: uniformity above 6");
    const int qn = q.size();
    if (qn > 5) throw BudgetError("build_hq: more than 5 members");
    if (qn < 1) throw PreconditionError("build_hq: family must be non-empty");

    // free coordinates of class i = members not containing element i+1
    std::vector<std::vector<int>> free_coords(static_cast<size_t>(r));
    for (int i = 0; i < r; i++)
        for (int j = 0; j < qn; j++)
            if (!(q.masks()[static_cast<size_t>(j)] >> i & 1))
                free_coords[static_cast<size_t>(i)].push_back(j);

    HqResult out{Hypergraph(2, 0, {}), {}};
    std::vector<int> offset(static_cast<size_t>(r) + 1, 0);
    out.classes.resize(static_cast<size_t>(r));
    for (int i = 0; i < r; i++) {
        int size = 1 << free_coords[static_cast<size_t>(i)].size();
        offset[static_cast<size_t>(i) + 1] = offset[static_cast<size_t>(i)] + size;
        for (int p = 0; p < size; p++)
            out.classes[static_cast<size_t>(i)].push_back(offset[static_cast<size_t>(i)] + p);
    }
    const int total_vertices = offset[static_cast<size_t>(r)];

    std::vector<std::vector<int>> edges;
    for (std::uint32_t sign = 0; sign < (std::uint32_t{1} << qn); sign++) {
        std::vector<int> edge;
        for (int i = 0; i < r; i++) {
            int pattern = 0;
            const auto& fc = free_coords[static_cast<size_t>(i)];
            for (std::size_t b = 0; b < fc.size(); b++)
                if (sign >> fc[b] & 1) pattern |= 1 << b;
            edge.push_back(offset[static_cast<size_t>(i)] + pattern);
        }
        edges.push_back(std::move(edge));
    }
    out.hypergraph = Hypergraph(r, total_vertices, std::move(edges));
    return out;
}

PairIntersectionOrdering hq_pair_intersection_check(const Hypergraph& hq) {
    const int m = hq.edge_count();
    const int r = hq.uniformity();
    // sharing graph: edges meeting in >= r-1 vertices
    std::vector<std::vector<int>> share(static_cast<size_t>(m));
    for (int i = 0; i < m; i++)
        for (int j = i + 1; j < m; j++) {
            std::vector<int> common;
            std::set_intersection(hq.edge(i).begin(), hq.edge(i).end(),
                                  hq.edge(j).begin(), hq.edge(j).end(),
                                  std::back_inserter(common));
            if (static_cast<int>(common.size()) >= r - 1) {
                share[static_cast<size_t>(i)].push_back(j);
                share[static_cast<size_t>(j)].push_back(i);
            }
        }

    std::vector<int> ordering;
    std::vector<char> placed(static_cast<size_t>(m), 0);
    std::uint64_t nodes = 0;

    std::function<bool()> rec = [&]() -> bool {
        if (static_cast<int>(ordering.size()) == m) return true;
        if (++nodes > 1000000)
            throw BudgetError("hq_pair_intersection_check: ordering search budget exceeded");
        for (int e = 0; e < m; e++) {
            if (placed[static_cast<size_t>(e)]) continue;
            int earlier = 0;
            for (int f : share[static_cast<size_t>(e)]) earlier += placed[static_cast<size_t>(f)];
            if (earlier > 1) continue;
            placed[static_cast<size_t>(e)] = 1;
            ordering.push_back(e);
            if (rec()) return true;
            ordering.pop_back();
            placed[static_cast<size_t>(e)] = 0;
        }
        return false;
    };
    bool ok = m == 0 || rec();
    return PairIntersectionOrdering{ok, ok ? ordering : std::vector<int>{}};
}

std::string vanishing_certificate_to_json(const Hypergraph& h, const SubsetFamily& q,
                                          const VanishingCertificate& cert) {
    nlohmann::json j;
    j["vanishing"] = true;
    j["edge_index"] = cert.edge_index;
    j["edge"] = h.edge(cert.edge_index);
    j["phi"] = cert.phi;
    j["family"] = nlohmann::json::parse(q.to_json());
    nlohmann::json cov = nlohmann::json::array();
    for (const auto& c : cert.coverings) {
        nlohmann::json one;
        one["edge_index"] = c.edge_index;
        std::vector<int> image;
        for (int i = 0; i < q.ground_arity(); i++)
            if (c.image_mask >> i & 1) image.push_back(i + 1);
        one["image"] = image;
        one["member_index"] = c.member_index;
        cov.push_back(std::move(one));
    }
    j["coverings"] = std::move(cov);
    return j.dump();
}

VanishingCertificate vanishing_certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("vanishing JSON: ") + e.what());
    }
    VanishingCertificate cert;
    try {
        cert.edge_index = j.at("edge_index").get<int>();
        cert.phi = j.at("phi").get<std::vector<int>>();
        for (const auto& c : j.at("coverings")) {
            std::uint32_t mask = 0;
            for (int x : c.at("image").get<std::vector<int>>())
                mask |= std::uint32_t{1} << (x - 1);
            cert.coverings.push_back(
                {c.at("edge_index").get<int>(), mask, c.at("member_index").get<int>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("vanishing JSON: ") + e.what());
    }
    return cert;
}

}  // namespace poslab

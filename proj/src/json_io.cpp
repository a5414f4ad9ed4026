#include "esym/json_io.hpp"

namespace esym {

json ring_to_json(const RingPtr& ring) {
    switch (ring->kind()) {
    case RingKind::Integers:
        return json{{"kind", "Integers"}};
    case RingKind::Modular:
        return json{{"kind", "Modular"}, {"modulus", ring->modulus().get_str()}};
    case RingKind::Poly:
        return json{{"kind", "Poly"},
                    {"base", ring_to_json(ring->base())},
                    {"variables", ring->variables()}};
    case RingKind::Excision:
        return json{{"kind", "Excision"},
                    {"base", ring_to_json(ring->base())},
                    {"ideal", ideal_to_json(ring->ideal())}};
    case RingKind::ExcisionZ:
        return json{{"kind", "ExcisionZ"},
                    {"host", ring_to_json(ring->base())},
                    {"ideal", ideal_to_json(ring->ideal())}};
    }
    throw internal_check_failed("unreachable ring kind");
}

RingPtr ring_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Integers") return Ring::integers();
    if (kind == "Modular") return Ring::modular(mpz_class(j.at("modulus").get<std::string>()));
    if (kind == "Poly")
        return Ring::poly(ring_from_json(j.at("base")),
                          j.at("variables").get<std::vector<std::string>>());
    if (kind == "Excision")
        return Ring::excision(ring_from_json(j.at("base")), ideal_from_json(j.at("ideal")));
    if (kind == "ExcisionZ")
        return Ring::excision_z(ring_from_json(j.at("host")), ideal_from_json(j.at("ideal")));
    throw error("unknown ring kind: " + kind);
}

json element_to_json(const RingElement& e) {
    switch (e.ring()->kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return e.as_int().get_str();
    case RingKind::Poly: {
        json terms = json::array();
        for (const auto& [m, c] : e.as_poly().terms)
            terms.push_back(json::array({m.exp, c.get_str()}));
        return terms;
    }
    case RingKind::Excision:
    case RingKind::ExcisionZ:
        return json::array({element_to_json(*e.as_pair().first),
                            element_to_json(*e.as_pair().second)});
    }
    throw internal_check_failed("unreachable ring kind");
}

RingElement element_from_json(const RingPtr& ring, const json& j) {
    switch (ring->kind()) {
    case RingKind::Integers:
    case RingKind::Modular:
        return ring->from_mpz(mpz_class(j.get<std::string>()));
    case RingKind::Poly: {
        Poly p;
        for (const auto& term : j) {
            Monomial m;
            m.exp = term.at(0).get<std::vector<std::uint32_t>>();
            mpz_class c(term.at(1).get<std::string>());
            auto it = p.terms.find(m);
            if (it == p.terms.end())
                p.terms.emplace(std::move(m), std::move(c));
            else
                it->second += c;
        }
        return ring->from_poly(std::move(p));
    }
    case RingKind::Excision:
    case RingKind::ExcisionZ: {
        RingPtr first_ring =
            ring->kind() == RingKind::Excision ? ring->base() : Ring::integers();
        return ring->make_pair(element_from_json(first_ring, j.at(0)),
                               element_from_json(ring->base(), j.at(1)));
    }
    }
    throw internal_check_failed("unreachable ring kind");
}

json ideal_to_json(const Ideal& ideal) {
    json gens = json::array();
    for (const auto& g : ideal.generators) gens.push_back(element_to_json(g));
    return json{{"ring", ring_to_json(ideal.ring)}, {"generators", gens}};
}

Ideal ideal_from_json(const json& j) {
    Ideal out;
    out.ring = ring_from_json(j.at("ring"));
    for (const auto& g : j.at("generators"))
        out.generators.push_back(element_from_json(out.ring, g));
    return out;
}

json row_to_json(const Row& r) {
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back(element_to_json(e));
    return json{{"ring", ring_to_json(r.ring)}, {"entries", entries}};
}

Row row_from_json(const json& j) {
    RingPtr ring = ring_from_json(j.at("ring"));
    std::vector<RingElement> e;
    for (const auto& x : j.at("entries")) e.push_back(element_from_json(ring, x));
    return row_of(ring, std::move(e));
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.nrows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.ncols(); ++c) row.push_back(element_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"ring", ring_to_json(m.ring())},
                {"nrows", m.nrows()},
                {"ncols", m.ncols()},
                {"entries", rows}};
}

Matrix matrix_from_json(const json& j) {
    RingPtr ring = ring_from_json(j.at("ring"));
    int nrows = j.at("nrows").get<int>();
    int ncols = j.at("ncols").get<int>();
    std::vector<RingElement> e;
    for (const auto& row : j.at("entries"))
        for (const auto& x : row) e.push_back(element_from_json(ring, x));
    return Matrix(ring, nrows, ncols, std::move(e));
}

json signed_permutation_to_json(const SignedPermutation& p) {
    std::vector<std::size_t> images;
    for (auto im : p.images) images.push_back(im + 1);
    return json{{"images", images}, {"signs", p.signs}};
}

json word_to_json(const GroupWord& w) {
    json letters = json::array();
    for (const auto& l : w.letters) {
        if (std::holds_alternative<Generator>(l)) {
            const Generator& g = std::get<Generator>(l);
            switch (g.kind) {
            case Generator::Kind::Elem:
                letters.push_back(json{{"e", json::array({g.i, g.j, element_to_json(g.param)})}});
                break;
            case Generator::Kind::SymplElem:
                letters.push_back(
                    json{{"se", json::array({g.i, g.j, element_to_json(g.param)})}});
                break;
            case Generator::Kind::DiagSign:
                letters.push_back(json{{"delta", g.j}});
                break;
            }
        } else {
            const ConjFrame& f = std::get<ConjFrame>(l);
            letters.push_back(
                json{{"conj", json::array({word_to_json(*f.outer), word_to_json(*f.inner)})}});
        }
    }
    json out{{"ring", ring_to_json(w.ring)},
             {"size", w.size},
             {"flavor", w.flavor == Flavor::Symplectic ? "sympl" : "linear"},
             {"letters", letters}};
    if (w.relative_ideal) out["relative_ideal"] = ideal_to_json(*w.relative_ideal);
    return out;
}

GroupWord word_from_json(const json& j) {
    RingPtr ring = ring_from_json(j.at("ring"));
    int size = j.at("size").get<int>();
    Flavor flavor = j.at("flavor").get<std::string>() == "sympl" ? Flavor::Symplectic
                                                                 : Flavor::Linear;
    GroupWord w = GroupWord::empty(ring, size, flavor);
    if (j.contains("relative_ideal")) w.relative_ideal = ideal_from_json(j.at("relative_ideal"));
    for (const auto& l : j.at("letters")) {
        if (l.contains("e")) {
            const auto& a = l.at("e");
            w.append(elem_letter(a.at(0).get<int>(), a.at(1).get<int>(),
                                 element_from_json(ring, a.at(2)), size));
        } else if (l.contains("se")) {
            const auto& a = l.at("se");
            w.append(sympl_letter(a.at(0).get<int>(), a.at(1).get<int>(),
                                  element_from_json(ring, a.at(2)), size));
        } else if (l.contains("delta")) {
            w.append(diag_letter(l.at("delta").get<int>(), ring, size));
        } else if (l.contains("conj")) {
            const auto& a = l.at("conj");
            w.append(ConjFrame{std::make_shared<const GroupWord>(word_from_json(a.at(0))),
                               std::make_shared<const GroupWord>(word_from_json(a.at(1)))});
        } else {
            throw error("unknown word letter");
        }
    }
    return w;
}

json certificate_to_json(const ReductionCertificate& c) {
    return json{{"kind", "row"},
                {"input", row_to_json(c.input)},
                {"word", word_to_json(c.word)},
                {"output", row_to_json(c.output)}};
}

json certificate_to_json(const MatrixCertificate& c) {
    return json{{"kind", "matrix"},
                {"input", matrix_to_json(c.input)},
                {"word", word_to_json(c.word)},
                {"output", matrix_to_json(c.output)}};
}

std::variant<ReductionCertificate, MatrixCertificate> certificate_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "row")
        return ReductionCertificate{row_from_json(j.at("input")), word_from_json(j.at("word")),
                                    row_from_json(j.at("output"))};
    if (kind == "matrix")
        return MatrixCertificate{matrix_from_json(j.at("input")), word_from_json(j.at("word")),
                                 matrix_from_json(j.at("output"))};
    throw error("unknown certificate kind: " + kind);
}

// ---------------------------------------------------------------------------
// CLI ring grammar
// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '(') ++depth;
        if (s[k] == ')') --depth;
        if (s[k] == sep && depth == 0) {
            out.push_back(strip(s.substr(start, k - start)));
            start = k + 1;
        }
    }
    out.push_back(strip(s.substr(start)));
    return out;
}

} // namespace

RingPtr parse_ring_spec(const std::string& spec) {
    std::string s = strip(spec);
    if (s == "Z") return Ring::integers();
    if (s.rfind("Z/", 0) == 0) return Ring::modular(mpz_class(s.substr(2)));
    auto parse_call = [&](const std::string& head) -> std::optional<std::pair<std::string, std::string>> {
        if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
        std::string inner = s.substr(head.size() + 1, s.size() - head.size() - 2);
        auto parts = split(inner, ';');
        if (parts.size() != 2) throw error("expected '" + head + "(RING;ARGS)': " + spec);
        return std::make_pair(parts[0], parts[1]);
    };
    if (auto c = parse_call("poly")) {
        RingPtr base = parse_ring_spec(c->first);
        std::vector<std::string> vars = split(c->second, ',');
        return Ring::poly(base, std::move(vars));
    }
    if (auto c = parse_call("excisionZ")) {
        RingPtr host = parse_ring_spec(c->first);
        return Ring::excision_z(host, parse_ideal_spec(host, c->second));
    }
    if (auto c = parse_call("excision")) {
        RingPtr base = parse_ring_spec(c->first);
        return Ring::excision(base, parse_ideal_spec(base, c->second));
    }
    throw error("cannot parse ring: " + spec);
}

Ideal parse_ideal_spec(const RingPtr& ring, const std::string& spec) {
    std::string s = strip(spec);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw error("ideal must look like (g1,g2,...): " + spec);
    Ideal out;
    out.ring = ring;
    for (const auto& part : split(s.substr(1, s.size() - 2), ','))
        out.generators.push_back(ring->from_mpz(mpz_class(part)));
    if (out.generators.empty()) throw error("ideal needs at least one generator");
    return out;
}

} // namespace esym

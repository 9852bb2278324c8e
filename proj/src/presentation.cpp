#include <resonance/presentation.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace resonance {

using nlohmann::json;

bool is_zero_point(const Point& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; });
}

std::string family_name(Family f) {
    switch (f) {
        case Family::mccool: return "mccool";
        case Family::product_free: return "product-free";
        case Family::custom: return "custom";
    }
    return "custom";
}

int Presentation::gen_index(const std::string& gname) const {
    for (std::size_t i = 0; i < gen_names.size(); ++i) {
        if (gen_names[i] == gname) return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown generator name: " + gname);
}

namespace {

void finalize(Presentation& p) {
    const I2Basis b = i2_basis(p);
    p.relations_independent = b.independent;
    p.i2_dim = b.dim;
}

ExtElement gen_of(int n, int p, int q) {
    return ExtElement::generator(flat_index({p, q}, n));
}

}  // namespace

Presentation mccool_presentation(int n) {
    if (n < 2) throw std::invalid_argument("mccool_presentation: need n >= 2");
    Presentation p;
    p.family = Family::mccool;
    p.n = n;
    p.N = generator_count(n);
    p.name = "mccool(n=" + std::to_string(n) + ")";
    for (int i = 0; i < p.N; ++i) p.gen_names.push_back(label_name(label_of(i, n)));

    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            p.relations.push_back(gen_of(n, i, j) * gen_of(n, j, i));
            p.relation_names.push_back("eta(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                if (k == i || k == j) continue;
                p.relations.push_back((gen_of(n, k, i) - gen_of(n, j, i)) *
                                      (gen_of(n, k, j) - gen_of(n, i, j)));
                p.relation_names.push_back("tau^" + std::to_string(k) + "(" + std::to_string(i) +
                                           "," + std::to_string(j) + ")");
            }
        }
    }
    finalize(p);
    return p;
}

int eta_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    int idx = 0;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    }
    throw std::invalid_argument("eta_index: pair out of range");
}

int tau_index(int n, int i, int j, int k) {
    if (i > j) std::swap(i, j);
    if (k == i || k == j) throw std::invalid_argument("tau_index: k must avoid {i,j}");
    int idx = n * (n - 1) / 2;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            for (int c = 1; c <= n; ++c) {
                if (c == a || c == b) continue;
                if (a == i && b == j && c == k) return idx;
                ++idx;
            }
        }
    }
    throw std::invalid_argument("tau_index: triple out of range");
}

Presentation product_free_presentation(int n) {
    if (n < 2) throw std::invalid_argument("product_free_presentation: need n >= 2");
    Presentation p;
    p.family = Family::product_free;
    p.n = n;
    p.N = n * (n - 1);
    p.name = "product-free(n=" + std::to_string(n) + ")";
    p.blocks.assign(n - 1, {});
    for (int b = 1; b <= n - 1; ++b) {
        for (int i = 1; i <= n; ++i) {
            p.blocks[b - 1].push_back(static_cast<int>(p.gen_names.size()));
            p.gen_names.push_back(std::to_string(b) + "," + std::to_string(i));
        }
    }
    for (int b = 0; b < n - 1; ++b) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                p.relations.push_back(ExtElement::generator(p.blocks[b][i]) *
                                      ExtElement::generator(p.blocks[b][j]));
                p.relation_names.push_back("w(" + std::to_string(b + 1) + ";" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ")");
            }
        }
    }
    finalize(p);
    return p;
}

namespace {

Integer parse_integer(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(where + ": not an integer: \"" + j.get<std::string>() + "\"");
        }
    }
    throw std::runtime_error(where + ": expected an integer");
}

Rational parse_coeff(const json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_string()) return Rational(parse_integer(j, where));
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error(where + ": coefficient must be an integer or a [num,den] pair");
    const Integer num = parse_integer(j[0], where);
    const Integer den = parse_integer(j[1], where);
    if (den == 0) throw std::runtime_error(where + ": coefficient denominator is zero");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

std::string monomial_label(const Monomial& m, const Presentation& p) {
    if (m.degree() == 0) return "1";
    std::string out;
    for (int i : m.indices()) out += "e(" + p.gen_names[i] + ")";
    return out;
}

}  // namespace

Presentation parse_presentation(const json& doc) {
    if (!doc.is_object()) throw std::runtime_error("presentation: document must be a JSON object");
    Presentation p;
    p.family = Family::custom;
    p.n = 0;
    p.name = doc.value("name", std::string("custom"));

    if (!doc.contains("generators") || !doc["generators"].is_array())
        throw std::runtime_error("presentation: missing \"generators\" array");
    std::unordered_map<std::string, int> index_of;
    for (std::size_t i = 0; i < doc["generators"].size(); ++i) {
        const json& g = doc["generators"][i];
        if (!g.is_string() || g.get<std::string>().empty())
            throw std::runtime_error("generators[" + std::to_string(i) +
                                     "]: generator names must be nonempty strings");
        const std::string name = g.get<std::string>();
        if (index_of.count(name))
            throw std::runtime_error("generators[" + std::to_string(i) + "]: duplicate generator \"" +
                                     name + "\"");
        index_of[name] = static_cast<int>(i);
        p.gen_names.push_back(name);
    }
    p.N = static_cast<int>(p.gen_names.size());
    if (p.N == 0) throw std::runtime_error("presentation: at least one generator required");
    if (p.N >= kMaxGeneratorBits)
        throw std::runtime_error("presentation: too many generators (limit " +
                                 std::to_string(kMaxGeneratorBits - 1) + ")");

    if (!doc.contains("relations") || !doc["relations"].is_array())
        throw std::runtime_error("presentation: missing \"relations\" array");
    for (std::size_t r = 0; r < doc["relations"].size(); ++r) {
        const std::string rwhere = "relations[" + std::to_string(r) + "]";
        const json& rel = doc["relations"][r];
        if (!rel.is_array() || rel.empty())
            throw std::runtime_error(rwhere + ": a relation is a nonempty list of terms");
        ExtElement element(2);
        for (std::size_t t = 0; t < rel.size(); ++t) {
            const std::string twhere = rwhere + "[" + std::to_string(t) + "]";
            const json& term = rel[t];
            if (!term.is_array() || term.size() != 2)
                throw std::runtime_error(twhere + ": a term is [coefficient, [genA, genB]]");
            const Rational coeff = parse_coeff(term[0], twhere);
            const json& pair = term[1];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
                throw std::runtime_error(twhere +
                                         ": relation not homogeneous of degree 2 "
                                         "(each term needs exactly two generator names)");
            auto a = index_of.find(pair[0].get<std::string>());
            auto b = index_of.find(pair[1].get<std::string>());
            if (a == index_of.end())
                throw std::runtime_error(twhere + ": unknown generator \"" +
                                         pair[0].get<std::string>() + "\"");
            if (b == index_of.end())
                throw std::runtime_error(twhere + ": unknown generator \"" +
                                         pair[1].get<std::string>() + "\"");
            element += coeff * (ExtElement::generator(a->second) * ExtElement::generator(b->second));
        }
        if (element.is_zero())
            throw std::runtime_error(rwhere + ": relation expands to zero");
        p.relations.push_back(std::move(element));
        p.relation_names.push_back("r" + std::to_string(r));
    }
    finalize(p);
    return p;
}

Presentation parse_presentation_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("presentation: invalid JSON: ") + e.what());
    }
    return parse_presentation(doc);
}

json serialize_presentation(const Presentation& p) {
    json doc;
    doc["name"] = p.name;
    doc["generators"] = p.gen_names;
    json rels = json::array();
    for (const ExtElement& rel : p.relations) {
        json terms = json::array();
        for (const auto& [mono, coeff] : rel.terms()) {
            const std::vector<int> idx = mono.indices();
            terms.push_back(json::array(
                {json::array({integer_json(coeff.get_num()), integer_json(coeff.get_den())}),
                 json::array({p.gen_names[idx[0]], p.gen_names[idx[1]]})}));
        }
        rels.push_back(terms);
    }
    doc["relations"] = rels;
    return doc;
}

bool same_algebra(const Presentation& a, const Presentation& b) {
    return a.N == b.N && a.gen_names == b.gen_names && a.relations == b.relations;
}

I2Basis i2_basis(const Presentation& p) {
    const std::vector<Monomial> basis = basis_monomials(2, p.N);
    std::unordered_map<std::uint64_t, int> col_of;
    for (std::size_t c = 0; c < basis.size(); ++c) col_of[basis[c].bits()] = static_cast<int>(c);

    I2Basis out;
    out.matrix = RationalMatrix(static_cast<int>(p.relations.size()), static_cast<int>(basis.size()));
    out.matrix.row_labels = p.relation_names;
    for (const Monomial& m : basis) out.matrix.col_labels.push_back(monomial_label(m, p));
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
        for (const auto& [mono, coeff] : p.relations[r].terms()) {
            out.matrix.at(static_cast<int>(r), col_of.at(mono.bits())) = coeff;
        }
    }
    out.dim = rank(out.matrix);
    out.independent = out.dim == static_cast<int>(p.relations.size());
    return out;
}

}  // namespace resonance

#pragma once

#include <resonance/exterior.hpp>
#include <resonance/linalg.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace resonance {

// Point of A^1: N rational coordinates indexed by flat generator index,
// semantically a = sum a_{p,q} e_{p,q}.
using Point = std::vector<Rational>;

bool is_zero_point(const Point& a);

enum class Family { mccool, product_free, custom };

std::string family_name(Family f);

// Exterior quotient presentation with all relations homogeneous of degree 2.
struct Presentation {
    Family family = Family::custom;
    int n = 0;  // family parameter; 0 for custom
    int N = 0;  // number of degree-one generators
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<ExtElement> relations;  // each of degree 2
    std::vector<std::string> relation_names;
    std::vector<std::vector<int>> blocks;  // product_free: generator indices per block

    bool relations_independent = false;
    int i2_dim = 0;

    int gen_index(const std::string& name) const;  // throws for unknown names
};

// Relations eta_{i,j} = e_{i,j} e_{j,i} for i < j, then
// tau^k_{i,j} = (e_{k,i} - e_{j,i})(e_{k,j} - e_{i,j}) ordered by (i,j,k).
Presentation mccool_presentation(int n);

// Relation indices inside mccool_presentation(n)'s fixed ordering.
int eta_index(int n, int i, int j);
int tau_index(int n, int i, int j, int k);

// n-1 blocks of n generators; relations are the within-block degree-2
// products, so the quotient is the cohomology of a product of free groups.
Presentation product_free_presentation(int n);

// JSON schema:
//   { "name": str, "generators": [str...],
//     "relations": [ [ [[num,den],[genA,genB]], ... ], ... ] }
// Each term multiplies the generator pair in the listed order with exterior
// signs applied. Errors carry the offending location.
Presentation parse_presentation(const nlohmann::json& doc);
Presentation parse_presentation_text(const std::string& text);
nlohmann::json serialize_presentation(const Presentation& p);

// Same underlying algebra: generator names and expanded relations agree.
bool same_algebra(const Presentation& a, const Presentation& b);

struct I2Basis {
    RationalMatrix matrix;  // rows = relations, cols = degree-2 monomials
    int dim = 0;            // rank = dim I^2
    bool independent = false;
};

I2Basis i2_basis(const Presentation& p);

}  // namespace resonance

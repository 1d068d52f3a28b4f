// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <json.hpp>

#include "qcomp/compalg.hpp"
#include "qcomp/composition.hpp"

namespace qcomp {

using Json = nlohmann::json;

// Canonical serialization: object keys sorted, scalars reduced ("num/den"
// over Q, plain residues over F_p), sparse tables sorted by index with
// zero entries dropped. Tensor equality is therefore byte-testable.

Json field_to_json(const FieldSpec& fs);
FieldSpec field_from_json(const Json& j);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const FieldSpec& fs);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const FieldSpec& fs);

Json matrix_to_json(const Matrix& m);  // row-major
Matrix matrix_from_json(const Json& j, const FieldSpec& fs, int rows,
                        int cols);

Json quadform_to_json(const QuadForm& q);
QuadForm quadform_from_json(const Json& j);

Json composition_to_json(const Composition& c);
Composition composition_from_json(const Json& j);

Json algebra_to_json(const CompositionAlgebra& a);
CompositionAlgebra algebra_from_json(const Json& j);

Json report_to_json(const Report& r);

std::string canonical_dump(const Json& j);
Json load_json_file(const std::string& path);  // bad_input on failure

}  // namespace qcomp

#pragma once

#include "json.hpp"

#include "crlab/kernels.hpp"
#include "crlab/leech.hpp"
#include "crlab/moebius.hpp"
#include "crlab/multipliers.hpp"

namespace crlab {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; matrices are arrays of rows.
Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const KernelModel& model);
Json to_json(const FiniteKernelSpace& space);
Json to_json(const MultiplierTable& table);
Json to_json(const BallAutomorphism& theta);
Json to_json(const Colligation& c);
Json to_json(const PsdReport& r);

Complex complex_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j);
ComplexVector vector_from_json(const Json& j);
KernelModelPtr model_from_json(const Json& j);
FiniteKernelSpace space_from_json(const Json& j);
MultiplierTable table_from_json(const Json& j);

}  // namespace crlab

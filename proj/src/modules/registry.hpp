#pragma once

#include "mathgen/catalog.hpp"

namespace mathgen::modules {

void register_algebra(Catalog& c);
void register_arithmetic(Catalog& c);
void register_calculus(Catalog& c);
void register_comparison(Catalog& c);
void register_measurement(Catalog& c);
void register_numbers(Catalog& c);
void register_polynomials(Catalog& c);
void register_probability(Catalog& c);

}  // namespace mathgen::modules

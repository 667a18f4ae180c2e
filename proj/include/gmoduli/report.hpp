#pragma once

#include "gmoduli/io.hpp"
#include "gmoduli/moduli.hpp"

namespace gmoduli {

Json to_json(const ValidationReport& rep);
Json to_json(const Partition& part);
Json to_json(const FlatnessReport& rep);
Json to_json(const FlatRep& rep);
Json to_json(const std::vector<LeafModuli>& moduli);
Json to_json(const std::vector<DoubleCosetClass>& classes);
Json to_json(const CompareReport& rep);
Json to_json(const AxiomReport& rep, double tol);
Json to_json(const MorphismResidual& res, double tol);

Json orbits_to_json(const std::vector<GaugeOrbit>& orbits);
Json fields_to_json(const std::vector<LatticeMorphism>& fields);

}  // namespace gmoduli

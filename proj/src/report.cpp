#include "gmoduli/report.hpp"

namespace gmoduli {

Json to_json(const ValidationReport& rep) {
  Json j;
  j["status"] = rep.ok() ? "pass" : "fail";
  j["structural_errors"] = rep.structural_errors;
  Json failures = Json::array();
  for (const auto& f : rep.axiom_failures) {
    Json entry;
    entry["axiom"] = f.axiom;
    entry["witnesses"] = f.witnesses;
    entry["detail"] = f.detail;
    failures.push_back(entry);
  }
  j["axiom_failures"] = failures;
  return j;
}

Json to_json(const Partition& part) {
  Json j;
  j["count"] = part.classes.size();
  j["classes"] = part.classes;
  return j;
}

Json to_json(const FlatnessReport& rep) {
  Json j;
  j["status"] = rep.pass() ? "pass" : "fail";
  j["structural_errors"] = rep.structural_errors;
  Json violations = Json::array();
  for (const auto& v : rep.violations) {
    Json entry;
    entry["kind"] = v.kind == FlatnessViolation::Kind::Face ? "face"
                    : v.kind == FlatnessViolation::Kind::EdgeSource ? "edge_source"
                                                                    : "edge_target";
    entry["index"] = v.index;
    entry["detail"] = v.detail;
    violations.push_back(entry);
  }
  j["violations"] = violations;
  return j;
}

Json to_json(const FlatRep& rep) {
  Json j;
  j["base"] = rep.base;
  j["tuple"] = rep.tuple;
  return j;
}

Json to_json(const std::vector<LeafModuli>& moduli) {
  Json leaves_json = Json::array();
  long long total = 0;
  for (const auto& lm : moduli) {
    Json entry;
    entry["leaf"] = lm.leaf;
    entry["objects"] = lm.leaf_objects;
    entry["rep_count"] = lm.rep_count;
    entry["class_count"] = lm.classes.size();
    Json classes = Json::array();
    for (const auto& cls : lm.classes) {
      Json c = to_json(cls.representative);
      c["orbit_size"] = cls.orbit_size;
      classes.push_back(c);
    }
    entry["representatives"] = classes;
    leaves_json.push_back(entry);
    total += static_cast<long long>(lm.classes.size());
  }
  Json j;
  j["leaves"] = leaves_json;
  j["total_classes"] = total;
  return j;
}

Json to_json(const std::vector<DoubleCosetClass>& classes) {
  Json list = Json::array();
  for (const auto& cls : classes) {
    Json entry;
    entry["representative"] = cls.representative;
    entry["size"] = cls.members.size();
    entry["members"] = cls.members;
    list.push_back(entry);
  }
  Json j;
  j["class_count"] = classes.size();
  j["classes"] = list;
  return j;
}

Json to_json(const CompareReport& rep) {
  Json j;
  j["status"] = rep.ok ? "pass" : "fail";
  j["genus"] = rep.genus;
  j["field_count"] = rep.field_count;
  j["rep_count"] = rep.rep_count;
  Json per_leaf = Json::array();
  for (const auto& row : rep.per_leaf) {
    Json entry;
    entry["leaf"] = row.leaf;
    entry["lattice_orbits"] = row.lattice_orbits;
    entry["holonomy_classes"] = row.holonomy_classes;
    entry["presentation_classes"] = row.presentation_classes;
    entry["match"] = row.match();
    per_leaf.push_back(entry);
  }
  j["per_leaf"] = per_leaf;
  Json bijection = Json::array();
  for (const auto& pair : rep.bijection) {
    Json entry;
    entry["orbit_representative"] = lattice_field_to_json(pair.orbit_representative);
    entry["class_representative"] = to_json(pair.class_representative);
    bijection.push_back(entry);
  }
  j["bijection"] = bijection;
  if (!rep.ok) j["failure"] = rep.failure;
  return j;
}

Json to_json(const AxiomReport& rep, double tol) {
  Json j;
  j["status"] = rep.pass(tol) ? "pass" : "fail";
  j["tolerance"] = tol;
  j["max_anchor_residual"] = rep.max_anchor_residual;
  j["max_structure_residual"] = rep.max_structure_residual;
  j["max_residual"] = rep.max_residual();
  return j;
}

Json to_json(const MorphismResidual& res, double tol) {
  Json j;
  j["status"] = res.pass(tol) ? "pass" : "fail";
  j["tolerance"] = tol;
  j["max_flatness_residual"] = res.max_flatness;
  j["max_anchor_residual"] = res.max_anchor;
  return j;
}

Json orbits_to_json(const std::vector<GaugeOrbit>& orbits) {
  Json list = Json::array();
  for (const auto& orbit : orbits) {
    Json entry;
    entry["representative"] = lattice_field_to_json(orbit.representative);
    entry["size"] = orbit.member_indices.size();
    entry["leaf"] = orbit.leaf;
    list.push_back(entry);
  }
  Json j;
  j["orbit_count"] = orbits.size();
  j["orbits"] = list;
  return j;
}

Json fields_to_json(const std::vector<LatticeMorphism>& fields) {
  Json list = Json::array();
  for (const auto& m : fields) list.push_back(lattice_field_to_json(m));
  return list;
}

}  // namespace gmoduli

#include "selfref/trace.hpp"

#include <stdexcept>
#include <string>

namespace selfref {

namespace {

std::string dec(const Natural& n) { return toDecimal(n); }
std::string dec(std::size_t n) { return std::to_string(n); }

Json naturals(const std::vector<Natural>& xs) {
  Json a = Json::array();
  for (const Natural& x : xs) a.push_back(dec(x));
  return a;
}

Json slot(const SlotFinding& f) {
  return Json{{"slot", dec(f.slot)},
              {"value", dec(f.value)},
              {"requiredFloor", toJson(f.requiredFloor)},
              {"ordering", toString(f.ordering)},
              {"finding", f.impossible ? "impossible" : "undecided"}};
}

}  // namespace

Json toJson(const Magnitude& m) {
  switch (m.kind()) {
    case Magnitude::Kind::Exact: return Json{{"exact", dec(m.payload())}};
    case Magnitude::Kind::LowerBound: return Json{{"lowerBoundLog2", dec(m.payload())}};
    case Magnitude::Kind::AtLeast: return Json{{"atLeast", dec(m.payload())}};
  }
  return Json{};
}

Magnitude magnitudeFromJson(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("magnitude: expected a one-key object");
  auto it = j.begin();
  const Natural v = parseNatural(it.value().get<std::string>());
  if (it.key() == "exact") return Magnitude::exact(v);
  if (it.key() == "lowerBoundLog2") return Magnitude::lowerBoundLog2(v);
  if (it.key() == "atLeast") return Magnitude::atLeast(v);
  throw std::invalid_argument("magnitude: unknown kind '" + it.key() + "'");
}

Json toJson(const SubTrace& t) {
  Json steps = Json::array();
  for (const SubStep& s : t.steps) {
    Json j{{"depth", dec(s.depth)}, {"argument", dec(s.argument)}, {"case", toString(s.tag)}};
    if (s.numOf) j["numOf"] = dec(*s.numOf);
    steps.push_back(std::move(j));
  }
  return Json{{"reading", toString(t.reading)},
              {"steps", std::move(steps)},
              {"result", toJson(t.result)},
              {"divergencePending", t.divergencePending}};
}

Json toJson(const ChainReport& r) {
  Json entries = Json::array();
  for (const Magnitude& m : r.entries) entries.push_back(toJson(m));
  Json cmp = Json::array();
  for (const ChainComparison& c : r.comparisons)
    cmp.push_back(Json{{"index", dec(c.index)}, {"ordering", toString(c.ordering)}, {"basis", c.basis}});
  return Json{{"scheme", r.scheme},
              {"entries", std::move(entries)},
              {"comparisons", std::move(cmp)},
              {"strictlyIncreasing", r.strictlyIncreasing},
              {"stepsVerified", dec(r.stepsVerified)}};
}

Json toJson(const FamilyReport& r) {
  return Json{{"name", r.name},
              {"relation", r.relation},
              {"checked", dec(r.checked)},
              {"exact", dec(r.exact)},
              {"floors", dec(r.floors)},
              {"counterexamples", naturals(r.counterexamples)},
              {"pass", r.pass()}};
}

Json toJson(const Lemma1Report& r) {
  return Json{{"scheme", r.scheme}, {"bound", dec(r.bound)}, {"family", toJson(r.family)}, {"pass", r.pass()}};
}

Json toJson(const NonIdentityReport& r) {
  Json fams = Json::array();
  for (const FamilyReport& f : r.families) fams.push_back(toJson(f));
  return Json{{"scheme", r.scheme}, {"bound", dec(r.bound)}, {"families", std::move(fams)}, {"pass", r.pass()}};
}

Json toJson(const GrowthCertificate& c) {
  Json steps = Json::array();
  for (const GrowthStep& s : c.steps)
    steps.push_back(Json{{"stepIndex", dec(s.stepIndex)},
                         {"requiredCodeFloor", toJson(s.requiredCodeFloor)},
                         {"unencodedSymbolCount", dec(s.unencodedSymbolCount)},
                         {"totalSymbols", dec(s.totalSymbols)},
                         {"note", s.note}});
  Json j{{"process", c.process}, {"scheme", c.scheme}};
  j["reading"] = c.reading ? Json(*c.reading) : Json(nullptr);
  j["baseline"] = c.baseline ? toJson(*c.baseline) : Json(nullptr);
  j["steps"] = std::move(steps);
  j["verdict"] = toString(c.verdict);
  j["stepsVerified"] = dec(c.stepsVerified);
  j["fixedPoint"] = c.fixedPoint ? Json(dec(*c.fixedPoint)) : Json(nullptr);
  j["failure"] = c.failure ? Json(*c.failure) : Json(nullptr);
  return j;
}

GrowthCertificate certificateFromJson(const Json& j) {
  GrowthCertificate c;
  c.process = j.at("process").get<std::string>();
  c.scheme = j.at("scheme").get<std::string>();
  if (!j.at("reading").is_null()) c.reading = j.at("reading").get<std::string>();
  if (!j.at("baseline").is_null()) c.baseline = magnitudeFromJson(j.at("baseline"));
  for (const Json& s : j.at("steps"))
    c.steps.push_back({std::stoul(s.at("stepIndex").get<std::string>()), magnitudeFromJson(s.at("requiredCodeFloor")),
                       parseNatural(s.at("unencodedSymbolCount").get<std::string>()),
                       parseNatural(s.at("totalSymbols").get<std::string>()), s.at("note").get<std::string>()});
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "DivergesMonotonically")
    c.verdict = Verdict::DivergesMonotonically;
  else if (v == "FixedPointFound")
    c.verdict = Verdict::FixedPointFound;
  else if (v == "Inconclusive")
    c.verdict = Verdict::Inconclusive;
  else
    throw std::invalid_argument("certificate: unknown verdict '" + v + "'");
  c.stepsVerified = std::stoul(j.at("stepsVerified").get<std::string>());
  if (!j.at("fixedPoint").is_null()) c.fixedPoint = parseNatural(j.at("fixedPoint").get<std::string>());
  if (!j.at("failure").is_null()) c.failure = j.at("failure").get<std::string>();
  return c;
}

Json toJson(const MTermSkeleton& s) {
  Json slots = Json::array();
  for (const Magnitude& m : s.numeralSlots()) slots.push_back(toJson(m));
  return Json{{"numeralSlots", std::move(slots)},
              {"overheadSymbols", dec(s.overheadSymbols())},
              {"totalSymbolCount", toJson(s.totalSymbolCount())}};
}

Json toJson(const ArrayBundle& b) {
  Json terms = Json::array(), codes = Json::array(), lengths = Json::array();
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    terms.push_back(render(b.terms[i]));
    codes.push_back(toJson(b.codes[i]));
    lengths.push_back(toJson(b.codeNumeralLengths[i]));
  }
  Json closed = Json::array(), grid = Json::array(), skeletons = Json::array();
  for (std::size_t i = 0; i < b.closed.size(); ++i) {
    Json cr = Json::array(), gr = Json::array(), sr = Json::array();
    for (std::size_t j = 0; j < b.closed[i].size(); ++j) {
      cr.push_back(render(b.closed[i][j]));
      gr.push_back(Json{{"code", toJson(b.codeGrid[i][j])}, {"degraded", static_cast<bool>(b.degraded[i][j])}});
      sr.push_back(toJson(b.skeletons[i][j]));
    }
    closed.push_back(std::move(cr));
    grid.push_back(std::move(gr));
    skeletons.push_back(std::move(sr));
  }
  return Json{{"scheme", b.scheme},
              {"gridSize", dec(b.gridSize)},
              {"terms", std::move(terms)},
              {"codes", std::move(codes)},
              {"codeNumeralLengths", std::move(lengths)},
              {"closedGrid", std::move(closed)},
              {"codeGrid", std::move(grid)},
              {"skeletonGrid", std::move(skeletons)}};
}

Json toJson(const DenotationCheck& c) {
  Json mism = Json::array();
  for (auto [i, j] : c.mismatches) mism.push_back(Json::array({dec(i), dec(j)}));
  return Json{{"exactCells", dec(c.exactCells)}, {"mismatches", std::move(mism)}, {"pass", c.pass()}};
}

Json toJson(const DiagonalReport& r) {
  Json slots = Json::array(), self = Json::array();
  for (const SlotFinding& f : r.slots) slots.push_back(slot(f));
  for (const SlotFinding& f : r.selfSlots) self.push_back(slot(f));
  return Json{{"row", dec(r.row)},
              {"column", dec(r.column)},
              {"cell", r.cell},
              {"slots", std::move(slots)},
              {"overheadSymbols", dec(r.overheadSymbols)},
              {"selfDiagonal", Json{{"term", r.selfTerm}, {"code", toJson(r.selfCode)}, {"slots", std::move(self)}}},
              {"pass", r.pass()}};
}

}  // namespace selfref

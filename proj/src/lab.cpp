#include "selfref/lab.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace selfref {

// ---- regularity chain ---------------------------------------------------------

ChainReport numeralCodeChain(const EncodingScheme& scheme, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("numeralCodeChain: steps must be >= 1");
  ChainReport report;
  report.scheme = std::string(scheme.name());
  report.entries.push_back(scheme.encodeOrFloor(std::vector<Natural>{kSuccCode}));
  while (report.entries.size() < steps) report.entries.push_back(Z(report.entries.back(), scheme));

  bool all = true;
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    const Magnitude& prev = report.entries[i];
    const Magnitude& next = report.entries[i + 1];
    ChainComparison c{i, compareCertified(next, prev), "direct"};
    if (c.ordering == Ordering::Unknown && !prev.isExact()) {
      // next is Z(actual), actual >= m; a numeral of actual+1 symbols codes
      // to at least certifiedFloor(actual+1), whose margin over its argument
      // only widens as m grows, so checking the least admissible m suffices.
      const Natural m = prev.floorValue();
      c.ordering = compareCertified(scheme.certifiedFloor(m + 1), Magnitude::exact(m));
      c.basis = "numeral-floor";
    }
    all = all && c.ordering == Ordering::Greater;
    report.comparisons.push_back(std::move(c));
  }
  report.strictlyIncreasing = all;
  report.stepsVerified = all ? report.comparisons.size() : 0;
  return report;
}

// ---- numerals against their own codes ----------------------------------------------

namespace {

// Records whether `code` is certified to differ from (in fact exceed) `value`.
void tally(FamilyReport& fam, const Magnitude& code, const Natural& value) {
  ++fam.checked;
  (code.isExact() ? fam.exact : fam.floors) += 1;
  if (compareCertified(code, Magnitude::exact(value)) != Ordering::Greater) fam.counterexamples.push_back(value);
}

std::size_t asSize(const Natural& n) {
  if (n > Natural(std::numeric_limits<std::uint32_t>::max())) throw std::invalid_argument("bound too large");
  return static_cast<std::size_t>(n);
}

}  // namespace

Lemma1Report checkLemma1(const EncodingScheme& scheme, const Natural& bound) {
  if (bound < 1) throw std::invalid_argument("checkLemma1: bound must be >= 1");
  Lemma1Report r{std::string(scheme.name()), bound, {"succ-numeral", "code(S k_p) > p", 0, 0, 0, {}}};
  const std::size_t top = asSize(bound);
  for (std::size_t p = 0; p <= top; ++p) tally(r.family, scheme.numeralCode(p, 1), p);
  return r;
}

std::vector<Natural> existsSuccFormulaCodes(std::size_t n) {
  const Natural x1 = variableCode(1);
  std::vector<Natural> codes{kExistsCode, x1, kLParenCode, x1, kEqCode};
  codes.insert(codes.end(), n + 1, Natural(kSuccCode));
  codes.emplace_back(kZeroCode);
  codes.emplace_back(kRParenCode);
  return codes;
}

bool NonIdentityReport::pass() const {
  return !families.empty() && std::all_of(families.begin(), families.end(), [](const auto& f) { return f.pass(); });
}

NonIdentityReport checkNonIdentities(const EncodingScheme& scheme, const Natural& bound) {
  if (bound < 1) throw std::invalid_argument("checkNonIdentities: bound must be >= 1");
  NonIdentityReport r{std::string(scheme.name()), bound, {}};
  FamilyReport succNumeral{"succ-numeral", "p != code(S k_p)", 0, 0, 0, {}};
  FamilyReport plusOne{"numeral-plus-one", "q != 1 + code(k_q)", 0, 0, 0, {}};
  FamilyReport succTerm{"succ-term", "n != code(S k_n)", 0, 0, 0, {}};
  FamilyReport existsFormula{"exists-formula", "n != code(Ex1(x1=S k_n))", 0, 0, 0, {}};
  const std::size_t top = asSize(bound);
  for (std::size_t v = 0; v <= top; ++v) {
    const Magnitude sk = scheme.numeralCode(v, 1);
    tally(succNumeral, sk, v);
    tally(plusOne, successor(scheme.numeralCode(v)), v);
    tally(succTerm, sk, v);
    tally(existsFormula, scheme.encodeOrFloor(existsSuccFormulaCodes(v)), v);
  }
  r.families = {std::move(succNumeral), std::move(plusOne), std::move(succTerm), std::move(existsFormula)};
  return r;
}

// ---- expansion processes ----------------------------------------------------------

const char* toString(Verdict v) {
  switch (v) {
    case Verdict::DivergesMonotonically: return "DivergesMonotonically";
    case Verdict::FixedPointFound: return "FixedPointFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// Verdict implied by the recorded steps alone.
Verdict growthVerdict(const GrowthCertificate& cert) {
  if (cert.steps.empty() || cert.failure) return Verdict::Inconclusive;
  if (cert.baseline && compareCertified(cert.steps.front().requiredCodeFloor, *cert.baseline) != Ordering::Greater)
    return Verdict::Inconclusive;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    if (cert.steps[i].unencodedSymbolCount < 1) return Verdict::Inconclusive;
    if (i > 0 &&
        compareFloors(cert.steps[i].requiredCodeFloor, cert.steps[i - 1].requiredCodeFloor) != Ordering::Greater)
      return Verdict::Inconclusive;
  }
  return Verdict::DivergesMonotonically;
}

// Value of a closed term, or nullopt once it passes `cap`.
std::optional<Natural> denotation(const Term& t, const Natural& cap) {
  switch (t.kind()) {
    case Term::Kind::Zero: return Natural(0);
    case Term::Kind::Var: return std::nullopt;
    case Term::Kind::Succ: {
      std::size_t n = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++n;
        cur = &cur->child();
      }
      auto inner = denotation(*cur, cap);
      if (!inner || *inner + n > cap) return std::nullopt;
      return *inner + n;
    }
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      auto l = denotation(t.left(), cap), r = denotation(t.right(), cap);
      if (!l || !r) return std::nullopt;
      Natural v = t.kind() == Term::Kind::Plus ? Natural(*l + *r) : Natural(*l * *r);
      if (v > cap) return std::nullopt;
      return v;
    }
  }
  return std::nullopt;
}

void finish(GrowthCertificate& cert) {
  cert.verdict = growthVerdict(cert);
  cert.stepsVerified = cert.verdict == Verdict::DivergesMonotonically ? cert.steps.size() : 0;
}

}  // namespace

bool verifyCertificate(const GrowthCertificate& cert) {
  switch (cert.verdict) {
    case Verdict::DivergesMonotonically:
      return growthVerdict(cert) == Verdict::DivergesMonotonically && cert.stepsVerified == cert.steps.size();
    case Verdict::FixedPointFound: {
      // The exhibit must be a code whose term denotes that very code.
      if (!cert.fixedPoint) return false;
      try {
        auto scheme = makeScheme(cert.scheme);
        const Natural& x = *cert.fixedPoint;
        if (scheme->encodeSeq(scheme->decodeSeq(x)) != x) return false;
        const Expression e = decodeNode(*scheme, x);
        const Term* t = std::get_if<Term>(&e);
        if (!t || !isClosed(*t)) return false;
        auto v = denotation(*t, x);
        return v && *v == x;
      } catch (const std::exception&) {
        return false;
      }
    }
    case Verdict::Inconclusive: return cert.stepsVerified == 0;
  }
  return false;
}

GrowthCertificate buildSigmaSeq(const EncodingScheme& scheme, std::size_t maxSteps) {
  if (maxSteps == 0) throw std::invalid_argument("buildSigmaSeq: maxSteps must be >= 1");
  GrowthCertificate cert;
  cert.process = "sigma-seq";
  cert.scheme = std::string(scheme.name());
  cert.baseline = Magnitude::exact(kSuccCode);

  // Unencoded S and 0 symbols. Encoding one S puts k_3 (three S, one 0) into
  // a new slot, encoding a 0 puts k_1 (one S, one 0); those are new symbols.
  Natural s = 1, z = 0;
  Natural total = 1;
  for (std::size_t k = 0; k < maxSteps; ++k) {
    total += 4 * s + 2 * z;
    cert.steps.push_back(
        {k, scheme.certifiedFloor(total), s + z, total, "slots allocated " + toDecimal(s + z)});
    Natural s2 = 3 * s + z, z2 = s + z;
    s = std::move(s2);
    z = std::move(z2);
  }
  finish(cert);
  return cert;
}

GrowthCertificate buildSigmaSub(const EncodingScheme& scheme, std::size_t maxSteps, SubReading reading) {
  if (maxSteps == 0) throw std::invalid_argument("buildSigmaSub: maxSteps must be >= 1");
  GrowthCertificate cert;
  cert.process = "sigma-sub";
  cert.scheme = std::string(scheme.name());
  cert.reading = toString(reading);
  cert.baseline = Magnitude::exact(kSuccCode);

  // sigma(x) = S Sub(x, Num(x)) applied to its own shape <code(S), code(x0)>.
  // Each unfolding yields S, the pair layer, k_code(S), and the numeral of the
  // inner value, whose code the next layer has to carry.
  constexpr unsigned kLayerSymbols = 1 + 1 + (kSuccCode + 1);
  Magnitude inner = Magnitude::exact(0);
  try {
    const Natural q0 = pairCode(kSuccCode, variableCode(0), scheme);
    SubTrace trace = subPaper(q0, scheme, reading);
    const SubStep& last = trace.steps.back();
    inner = last.tag == SubCase::Variable ? Z(*last.numOf, scheme) : Magnitude::exact(last.argument);
  } catch (const RecursionLimitExceeded& e) {
    cert.failure = e.what();
  } catch (const SearchLimitExceeded& e) {
    cert.failure = e.what();
  } catch (const InvalidCode& e) {
    cert.failure = e.what();
  }
  if (cert.failure) {
    finish(cert);
    return cert;
  }

  for (std::size_t k = 0; k < maxSteps; ++k) {
    const Natural numeralSymbols = inner.floorValue() + 1;
    const Natural total = kLayerSymbols + numeralSymbols;
    Magnitude floor = scheme.certifiedFloor(total);
    std::string note = k == 0 ? "subPaper " + std::string(toString(reading)) + ", inner " + inner.toString()
                              : "pair layer over the previous floor (otherwise case)";
    cert.steps.push_back({k, floor, numeralSymbols, total, std::move(note)});
    inner = std::move(floor);
  }
  finish(cert);
  return cert;
}

GrowthCertificate appendixExpansion(std::size_t maxSteps, SchemeOptions opts) {
  if (maxSteps == 0) throw std::invalid_argument("appendixExpansion: maxSteps must be >= 1");
  PrimeScheme scheme(opts);
  GrowthCertificate cert;
  cert.process = "z-iteration";
  cert.scheme = "prime";
  Magnitude u = Magnitude::exact(R(kSuccCode));
  for (std::size_t k = 0; k < maxSteps; ++k) {
    // The next iterate is the code of the numeral of u: u + 1 symbols.
    const Natural symbols = u.floorValue() + 1;
    cert.steps.push_back({k, u, symbols, symbols, k == 0 ? "R(3)" : "Z(u" + std::to_string(k - 1) + ")"});
    u = Z(u, scheme);
  }
  finish(cert);
  return cert;
}

// ---- arrays -----------------------------------------------------------------------

MTermSkeleton::MTermSkeleton(std::vector<Magnitude> numeralSlots, Natural overheadSymbols)
    : slots_(std::move(numeralSlots)), overhead_(std::move(overheadSymbols)) {
  if (overhead_ < 1) throw std::invalid_argument("MTermSkeleton: an m-term has at least one symbol of its own");
}

Magnitude MTermSkeleton::totalSymbolCount() const {
  Natural total = overhead_;
  bool exact = true;
  for (const Magnitude& m : slots_) {
    total += m.floorValue() + 1;
    exact = exact && m.isExact();
  }
  return exact ? Magnitude::exact(total) : Magnitude::atLeast(total);
}

std::optional<Natural> MTermSkeleton::denotation(const EncodingScheme& scheme) const {
  std::vector<Natural> codes;
  for (const Magnitude& m : slots_) {
    if (!m.isExact()) return std::nullopt;
    codes.push_back(m.value());
  }
  Magnitude code = scheme.encodeOrFloor(codes);
  if (!code.isExact()) return std::nullopt;
  return code.value();
}

ArrayBundle buildArrays(const std::vector<Term>& functionTerms, std::size_t gridSize, const EncodingScheme& scheme) {
  if (gridSize == 0) throw std::invalid_argument("buildArrays: gridSize must be >= 1");
  ArrayBundle b;
  b.scheme = std::string(scheme.name());
  b.gridSize = gridSize;
  for (const Term& t : functionTerms) {
    auto free = freeVariables(Expression(t));
    if (std::find(free.begin(), free.end(), VarIndex{0}) == free.end())
      throw std::invalid_argument("buildArrays: term " + render(t) + " has no free x0");
    b.terms.push_back(t);
    Magnitude code = encodeNodeOrFloor(scheme, Expression(t));
    b.codeNumeralLengths.push_back(successor(code));
    b.codes.push_back(std::move(code));

    std::vector<Term> closedRow;
    std::vector<Magnitude> codeRow;
    std::vector<bool> degradedRow;
    std::vector<MTermSkeleton> skeletonRow;
    for (std::size_t j = 0; j < gridSize; ++j) {
      Term c = substitute(t, 0, numeral(j));
      Magnitude cell = encodeNodeOrFloor(scheme, Expression(c));
      std::vector<Magnitude> slots;
      for (const Natural& sc : symbolCodes(symbolsOf(c))) slots.push_back(Magnitude::exact(sc));
      degradedRow.push_back(!cell.isExact());
      codeRow.push_back(std::move(cell));
      skeletonRow.emplace_back(std::move(slots), Natural(1));
      closedRow.push_back(std::move(c));
    }
    b.closed.push_back(std::move(closedRow));
    b.codeGrid.push_back(std::move(codeRow));
    b.degraded.push_back(std::move(degradedRow));
    b.skeletons.push_back(std::move(skeletonRow));
  }
  return b;
}

DenotationCheck checkDenotations(const ArrayBundle& bundle, const EncodingScheme& scheme) {
  DenotationCheck check;
  for (std::size_t i = 0; i < bundle.codeGrid.size(); ++i)
    for (std::size_t j = 0; j < bundle.codeGrid[i].size(); ++j) {
      const Magnitude& cell = bundle.codeGrid[i][j];
      if (!cell.isExact()) continue;
      auto d = bundle.skeletons[i][j].denotation(scheme);
      if (!d) continue;
      ++check.exactCells;
      if (*d != cell.value()) check.mismatches.emplace_back(i, j);
    }
  return check;
}

namespace {

// k_a denoting a code that holds k_a's own a+1 symbols and one more would need
// a >= certifiedFloor(a + 2).
SlotFinding examineSlot(std::size_t slot, const Natural& a, const EncodingScheme& scheme) {
  Magnitude need = scheme.certifiedFloor(a + 2);
  Ordering o = compareCertified(need, Magnitude::exact(a));
  return {slot, a, need, o, o == Ordering::Greater};
}

}  // namespace

bool DiagonalReport::pass() const {
  auto ok = [](const SlotFinding& f) { return f.impossible; };
  return overheadSymbols >= 1 && !slots.empty() && std::all_of(slots.begin(), slots.end(), ok) &&
         std::all_of(selfSlots.begin(), selfSlots.end(), ok);
}

DiagonalReport analyzeDiagonal(const ArrayBundle& bundle, std::size_t sigmaRow, const EncodingScheme& scheme) {
  if (sigmaRow >= bundle.terms.size() || sigmaRow >= bundle.gridSize)
    throw std::out_of_range("analyzeDiagonal: row " + std::to_string(sigmaRow) + " is outside the bundle");
  DiagonalReport r;
  r.row = r.column = sigmaRow;
  r.cell = render(bundle.closed[sigmaRow][sigmaRow]);
  const MTermSkeleton& sk = bundle.skeletons[sigmaRow][sigmaRow];
  r.overheadSymbols = sk.overheadSymbols();
  for (std::size_t i = 0; i < sk.numeralSlots().size(); ++i)
    r.slots.push_back(examineSlot(i, sk.numeralSlots()[i].floorValue(), scheme));

  // f_row applied to the numeral of its own code.
  const Term& f = bundle.terms[sigmaRow];
  const Magnitude& code = bundle.codes[sigmaRow];
  r.selfTerm = render(substitute(f, 0, Term::var(1000000)));
  const std::string placeholder = "x1000000";
  r.selfTerm.replace(r.selfTerm.find(placeholder), placeholder.size(), "k[" + code.toString() + "]");
  const Expression fe{f};
  const std::size_t occ = freeOccurrences(fe, 0).size();
  const Natural symbols = Natural(symbolCount(fe) - occ) + Natural(occ) * (code.floorValue() + 1);
  if (code.isExact()) {
    try {
      r.selfCode = diagonalCode(code.value(), variableCode(0), scheme);
    } catch (const std::exception&) {
      r.selfCode = scheme.certifiedFloor(symbols);
    }
  } else {
    r.selfCode = scheme.certifiedFloor(symbols);
  }
  std::set<Natural> distinct{kSuccCode, kZeroCode};
  for (const Natural& c : symbolCodes(symbolsOf(f)))
    if (c != variableCode(0)) distinct.insert(c);
  std::size_t i = 0;
  for (const Natural& a : distinct) r.selfSlots.push_back(examineSlot(i++, a, scheme));
  return r;
}

std::vector<Term> defaultSeedTerms() {
  std::vector<Term> out;
  for (const char* s : {"Sx0", "SSx0", "(x0+0)", "(x0*S0)"}) out.push_back(parseTerm(s));
  return out;
}

}  // namespace selfref

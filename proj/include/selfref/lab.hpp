#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "selfref/arithmetization.hpp"
#include "selfref/encoding.hpp"
#include "selfref/numerics.hpp"
#include "selfref/syntax.hpp"

namespace selfref {

// ---- regularity chain ---------------------------------------------------------

struct ChainComparison {
  std::size_t index;  // compares entry index+1 against entry index
  Ordering ordering;
  /// "direct" when the two entries were compared as they stand;
  /// "numeral-floor" when entry index was only a floor and the step was
  /// certified through Z(m) >= certifiedFloor(m + 1) > m for every admissible m.
  std::string basis;
};

struct ChainReport {
  std::string scheme;
  std::vector<Magnitude> entries;
  std::vector<ChainComparison> comparisons;
  bool strictlyIncreasing = false;
  std::size_t stepsVerified = 0;
};

/// entries[0] = code of [code(S)], entries[i+1] = Z(entries[i]); `steps`
/// entries in total. Throws invalid_argument when steps == 0.
ChainReport numeralCodeChain(const EncodingScheme& scheme, std::size_t steps);

// ---- numerals against their own codes ----------------------------------------------

struct FamilyReport {
  std::string name;
  std::string relation;
  std::size_t checked = 0;
  std::size_t exact = 0;   // decided from exact codes
  std::size_t floors = 0;  // decided from certified floors
  std::vector<Natural> counterexamples;
  bool pass() const { return counterexamples.empty() && checked > 0; }
};

struct Lemma1Report {
  std::string scheme;
  Natural bound;
  FamilyReport family;
  bool pass() const { return family.pass(); }
};

/// For every p <= bound certifies code("S k_p") > p.
Lemma1Report checkLemma1(const EncodingScheme& scheme, const Natural& bound);

struct NonIdentityReport {
  std::string scheme;
  Natural bound;
  std::vector<FamilyReport> families;
  bool pass() const;
};

/// p != code(S k_p), q != 1 + code(k_q), n != code(S k_n), n != code(Ex1(x1=S k_n)).
NonIdentityReport checkNonIdentities(const EncodingScheme& scheme, const Natural& bound);

/// Codes of "Ex1(x1=S k_n)", n + 8 symbols.
std::vector<Natural> existsSuccFormulaCodes(std::size_t n);

// ---- expansion processes ----------------------------------------------------------

enum class Verdict { DivergesMonotonically, FixedPointFound, Inconclusive };

const char* toString(Verdict v);

struct GrowthStep {
  std::size_t stepIndex;
  Magnitude requiredCodeFloor;
  Natural unencodedSymbolCount;
  Natural totalSymbols;
  std::string note;
};

struct GrowthCertificate {
  std::string process;
  std::string scheme;
  std::optional<std::string> reading;
  /// What the first floor must exceed, when the process fixes one.
  std::optional<Magnitude> baseline;
  std::vector<GrowthStep> steps;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t stepsVerified = 0;
  /// Exhibited exact code for FixedPointFound.
  std::optional<Natural> fixedPoint;
  std::optional<std::string> failure;
};

/// Re-checks the verdict from the recorded floors alone.
bool verifyCertificate(const GrowthCertificate& cert);

GrowthCertificate buildSigmaSeq(const EncodingScheme& scheme, std::size_t maxSteps);
GrowthCertificate buildSigmaSub(const EncodingScheme& scheme, std::size_t maxSteps, SubReading reading);
/// u0 = R(3), u(k+1) = Z(u(k)) under the prime scheme.
GrowthCertificate appendixExpansion(std::size_t maxSteps, SchemeOptions opts = {});

// ---- arrays -----------------------------------------------------------------------

/// An m-term: numerals k_a in slots plus at least one symbol of its own.
class MTermSkeleton {
 public:
  MTermSkeleton(std::vector<Magnitude> numeralSlots, Natural overheadSymbols);

  const std::vector<Magnitude>& numeralSlots() const { return slots_; }
  const Natural& overheadSymbols() const { return overhead_; }
  /// sum of (a_i + 1) over the slots, plus the overhead.
  Magnitude totalSymbolCount() const;
  /// Code of the slot sequence when every slot is exact.
  std::optional<Natural> denotation(const EncodingScheme& scheme) const;

 private:
  std::vector<Magnitude> slots_;
  Natural overhead_;
};

struct ArrayBundle {
  std::string scheme;
  std::vector<Term> terms;
  std::vector<Magnitude> codes;
  std::vector<Magnitude> codeNumeralLengths;
  std::vector<std::vector<Term>> closed;
  std::vector<std::vector<Magnitude>> codeGrid;
  std::vector<std::vector<bool>> degraded;
  std::vector<std::vector<MTermSkeleton>> skeletons;
  std::size_t gridSize = 0;
};

/// Rows are the terms, columns j = 0..gridSize-1 substitute k_j for x0.
ArrayBundle buildArrays(const std::vector<Term>& functionTerms, std::size_t gridSize, const EncodingScheme& scheme);

struct DenotationCheck {
  std::size_t exactCells = 0;
  std::vector<std::pair<std::size_t, std::size_t>> mismatches;
  bool pass() const { return mismatches.empty(); }
};

DenotationCheck checkDenotations(const ArrayBundle& bundle, const EncodingScheme& scheme);

struct SlotFinding {
  std::size_t slot;
  Natural value;
  Magnitude requiredFloor;  // code floor of k_value plus one more symbol
  Ordering ordering;
  bool impossible;
};

struct DiagonalReport {
  std::size_t row;
  std::size_t column;
  std::string cell;
  std::vector<SlotFinding> slots;
  Natural overheadSymbols;
  std::string selfTerm;  // f_r(k_code(f_r)) with the numeral abbreviated
  Magnitude selfCode = Magnitude::exact(0);
  std::vector<SlotFinding> selfSlots;
  bool pass() const;
};

/// Examines cell (sigmaRow, sigmaRow) and f_row(k_code(f_row)).
DiagonalReport analyzeDiagonal(const ArrayBundle& bundle, std::size_t sigmaRow, const EncodingScheme& scheme);

/// The seed list used when none is given: Sx0, SSx0, (x0+0), (x0*S0).
std::vector<Term> defaultSeedTerms();

}  // namespace selfref

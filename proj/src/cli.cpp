#include "selfref/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "selfref/arithmetization.hpp"
#include "selfref/encoding.hpp"
#include "selfref/lab.hpp"
#include "selfref/syntax.hpp"

namespace selfref::cli {

Json toJson(const RunConfig& c) {
  Json j{{"scheme", c.scheme},
         {"bound", std::to_string(c.bound)},
         {"maxSteps", std::to_string(c.maxSteps)},
         {"muCutoff", std::to_string(c.muCutoff)},
         {"subReading", c.subReading},
         {"format", c.format}};
  j["seedTerms"] = c.seedTerms ? Json(*c.seedTerms) : Json(nullptr);
  j["gridSize"] = std::to_string(c.gridSize);
  j["sigmaRow"] = std::to_string(c.sigmaRow);
  return j;
}

namespace {

// What a subcommand hands back: its JSON result, a text rendering, and
// whether the check it ran came out clean.
struct Outcome {
  Json result;
  std::string text;
  bool clean = true;
};

std::string mag(const Magnitude& m) { return m.toString(); }

std::string certText(const GrowthCertificate& c) {
  std::ostringstream os;
  os << c.process << " (" << c.scheme << (c.reading ? ", " + *c.reading : std::string()) << ")\n";
  for (const GrowthStep& s : c.steps)
    os << "  step " << s.stepIndex << ": floor " << mag(s.requiredCodeFloor) << ", unencoded "
       << toDecimal(s.unencodedSymbolCount) << ", symbols " << toDecimal(s.totalSymbols) << "\n";
  if (c.failure) os << "  stopped: " << *c.failure << "\n";
  os << "verdict: " << toString(c.verdict) << " (" << c.stepsVerified << " steps verified)";
  return os.str();
}

std::string familyText(const FamilyReport& f) {
  std::ostringstream os;
  os << f.name << " [" << f.relation << "]: checked " << f.checked << " (exact " << f.exact << ", floor " << f.floors
     << "), counterexamples " << f.counterexamples.size();
  for (std::size_t i = 0; i < std::min<std::size_t>(f.counterexamples.size(), 10); ++i)
    os << (i ? ", " : ": ") << toDecimal(f.counterexamples[i]);
  return os.str();
}

std::vector<Term> loadSeedTerms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read seed-terms file '" + path + "'");
  std::vector<Term> terms;
  std::string line;
  while (std::getline(in, line)) {
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line.empty() || line[0] == '#') continue;
    terms.push_back(parseTerm(line));
  }
  if (terms.empty()) throw std::invalid_argument("seed-terms file '" + path + "' holds no terms");
  return terms;
}

using Handler = std::function<Outcome(const RunConfig&, const EncodingScheme&, const std::vector<std::string>&)>;

void needArgs(const std::vector<std::string>& a, std::size_t lo, std::size_t hi, const char* usage) {
  if (a.size() < lo || a.size() > hi) throw std::invalid_argument(std::string("usage: ") + usage);
}

std::map<std::string, std::pair<std::string, Handler>> handlers() {
  std::map<std::string, std::pair<std::string, Handler>> h;

  h["encode"] = {"code of a term or formula: encode <text>", [](auto&, auto& s, auto& a) {
                   needArgs(a, 1, 1, "encode <text>");
                   Expression e = parse(a[0]);
                   Magnitude code = encodeNodeOrFloor(s, e);
                   Json codes = Json::array();
                   for (const Natural& c : symbolCodes(symbolsOf(e))) codes.push_back(toDecimal(c));
                   return Outcome{Json{{"input", render(e)}, {"symbolCodes", codes}, {"code", toJson(code)}},
                                  mag(code)};
                 }};

  h["decode"] = {"expression coded by a number: decode <code>", [](auto&, auto& s, auto& a) {
                   needArgs(a, 1, 1, "decode <code>");
                   const Natural x = parseNatural(a[0]);
                   Expression e = decodeNode(s, x);
                   return Outcome{Json{{"code", toDecimal(x)}, {"expression", render(e)}}, render(e)};
                 }};

  h["numeral"] = {"code of the numeral k_n: numeral <n>", [](auto&, auto& s, auto& a) {
                    needArgs(a, 1, 1, "numeral <n>");
                    const Natural n = parseNatural(a[0]);
                    Magnitude z = Z(n, s);
                    return Outcome{Json{{"n", toDecimal(n)}, {"code", toJson(z)}}, mag(z)};
                  }};

  h["beta"] = {"beta(x, i): beta <x> <i>", [](auto&, auto&, auto& a) {
                 needArgs(a, 2, 2, "beta <x> <i>");
                 const Natural x = parseNatural(a[0]), i = parseNatural(a[1]);
                 const Natural v = beta(x, i);
                 return Outcome{Json{{"x", toDecimal(x)}, {"i", toDecimal(i)}, {"value", toDecimal(v)}}, toDecimal(v)};
               }};

  h["seqnum"] = {"least beta sequence number: seqnum <a1> ... <an>", [](auto& c, auto&, auto& a) {
                   std::vector<Natural> seq;
                   for (const auto& s : a) seq.push_back(parseNatural(s));
                   Json in = Json::array();
                   for (const auto& v : seq) in.push_back(toDecimal(v));
                   const Natural x = seqNumber(seq, c.muCutoff);
                   return Outcome{Json{{"sequence", in}, {"code", Json{{"exact", toDecimal(x)}}}}, toDecimal(x)};
                 }};

  h["sub"] = {"Sub(x, Num(x)) by cases: sub <x>", [](auto& c, auto& s, auto& a) {
                needArgs(a, 1, 1, "sub <x>");
                const Natural x = parseNatural(a[0]);
                try {
                  SubTrace t = subPaper(x, s, parseSubReading(c.subReading));
                  std::ostringstream os;
                  for (const SubStep& st : t.steps)
                    os << std::string(2 * st.depth, ' ') << toString(st.tag) << " " << toDecimal(st.argument) << "\n";
                  os << mag(t.result) << (t.divergencePending ? " (divergence pending)" : "");
                  return Outcome{toJson(t), os.str()};
                } catch (const RecursionLimitExceeded& e) {
                  return Outcome{Json{{"error", e.what()}}, e.what(), false};
                }
              }};

  h["sb"] = {"substitute y for free v in x: sb <x> <v> <y>", [](auto&, auto& s, auto& a) {
               needArgs(a, 3, 3, "sb <x> <v> <y>");
               const Natural x = parseNatural(a[0]), v = parseNatural(a[1]), y = parseNatural(a[2]);
               const Natural r = Sb(x, v, y, s);
               return Outcome{Json{{"x", toDecimal(x)}, {"v", toDecimal(v)}, {"y", toDecimal(y)},
                                   {"occurrences", std::to_string(A(v, x, s))}, {"code", toDecimal(r)}},
                              toDecimal(r)};
             }};

  h["diag"] = {"Sb(x, v, Z(x)): diag <x> [v]", [](auto&, auto& s, auto& a) {
                 needArgs(a, 1, 2, "diag <x> [v]");
                 const Natural x = parseNatural(a[0]);
                 const Natural v = a.size() > 1 ? parseNatural(a[1]) : variableCode(0);
                 Magnitude d = diagonalCode(x, v, s);
                 return Outcome{Json{{"x", toDecimal(x)}, {"v", toDecimal(v)}, {"code", toJson(d)}}, mag(d)};
               }};

  h["chain"] = {"the numeral-code chain", [](auto& c, auto& s, auto& a) {
                  needArgs(a, 0, 0, "chain");
                  ChainReport r = numeralCodeChain(s, c.maxSteps);
                  std::ostringstream os;
                  for (std::size_t i = 0; i < r.entries.size(); ++i) {
                    os << "entry " << i << ": " << mag(r.entries[i]) << "\n";
                    if (i < r.comparisons.size())
                      os << "  next is " << toString(r.comparisons[i].ordering) << " (" << r.comparisons[i].basis
                         << ")\n";
                  }
                  os << "strictly increasing: " << (r.strictlyIncreasing ? "yes" : "no");
                  return Outcome{toJson(r), os.str(), r.strictlyIncreasing};
                }};

  h["lemma1"] = {"code(S k_p) > p for p <= bound", [](auto& c, auto& s, auto& a) {
                   needArgs(a, 0, 0, "lemma1");
                   Lemma1Report r = checkLemma1(s, c.bound);
                   return Outcome{toJson(r), familyText(r.family), r.pass()};
                 }};

  h["nonid"] = {"the numeric non-identities for values <= bound", [](auto& c, auto& s, auto& a) {
                  needArgs(a, 0, 0, "nonid");
                  NonIdentityReport r = checkNonIdentities(s, c.bound);
                  std::string text;
                  for (const auto& f : r.families) text += (text.empty() ? "" : "\n") + familyText(f);
                  return Outcome{toJson(r), text, r.pass()};
                }};

  auto cert = [](GrowthCertificate g) {
    const bool ok = g.verdict == Verdict::DivergesMonotonically;
    return Outcome{toJson(g), certText(g), ok};
  };
  h["expand-seq"] = {"sigma over the beta sequence number", [cert](auto& c, auto& s, auto& a) {
                       needArgs(a, 0, 0, "expand-seq");
                       return cert(buildSigmaSeq(s, c.maxSteps));
                     }};
  h["expand-sub"] = {"sigma over Sub(x, Num(x))", [cert](auto& c, auto& s, auto& a) {
                       needArgs(a, 0, 0, "expand-sub");
                       return cert(buildSigmaSub(s, c.maxSteps, parseSubReading(c.subReading)));
                     }};
  h["expand-appendix"] = {"the Z iteration from R(3) (prime scheme)", [cert](auto& c, auto&, auto& a) {
                            needArgs(a, 0, 0, "expand-appendix");
                            if (c.scheme != "prime") throw std::invalid_argument("expand-appendix needs --scheme prime");
                            return cert(appendixExpansion(c.maxSteps, SchemeOptions{c.muCutoff}));
                          }};

  h["arrays"] = {"the term/code arrays and the diagonal analysis", [](auto& c, auto& s, auto& a) {
                   needArgs(a, 0, 0, "arrays");
                   std::vector<Term> terms = c.seedTerms ? loadSeedTerms(*c.seedTerms) : defaultSeedTerms();
                   ArrayBundle b = buildArrays(terms, c.gridSize, s);
                   DenotationCheck d = checkDenotations(b, s);
                   DiagonalReport diag = analyzeDiagonal(b, c.sigmaRow, s);
                   std::ostringstream os;
                   for (std::size_t i = 0; i < b.terms.size(); ++i) {
                     os << render(b.terms[i]) << " [" << mag(b.codes[i]) << "]:";
                     for (std::size_t j = 0; j < b.gridSize; ++j)
                       os << "  " << render(b.closed[i][j]) << "=" << mag(b.codeGrid[i][j])
                          << (b.degraded[i][j] ? "*" : "");
                     os << "\n";
                   }
                   os << "denotations: " << d.exactCells << " exact cells, " << d.mismatches.size() << " mismatches\n";
                   const auto impossible = std::count_if(diag.slots.begin(), diag.slots.end(),
                                                         [](const SlotFinding& f) { return f.impossible; });
                   os << "diagonal " << diag.cell << ": " << impossible << "/" << diag.slots.size()
                      << " slots impossible, overhead " << toDecimal(diag.overheadSymbols) << "\n";
                   os << "self-diagonal " << diag.selfTerm << " = " << mag(diag.selfCode);
                   return Outcome{Json{{"bundle", toJson(b)}, {"denotations", toJson(d)}, {"diagonal", toJson(diag)}},
                                  os.str(), d.pass() && diag.pass()};
                 }};
  return h;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numbering and self-reference workbench", "selfref"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto isNumber = CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max());
  app.add_option("--scheme", cfg.scheme, "prime | beta")->check(CLI::IsMember({"prime", "beta"}));
  app.add_option("--bound", cfg.bound, "upper value for lemma1/nonid")->check(isNumber);
  app.add_option("--max-steps", cfg.maxSteps, "steps for chain and expansions")->check(isNumber);
  app.add_option("--mu-cutoff", cfg.muCutoff, "beta search cutoff")->check(isNumber);
  app.add_option("--sub-reading", cfg.subReading, "outer-num | recompute")
      ->check(CLI::IsMember({"outer-num", "recompute"}));
  app.add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed-terms", cfg.seedTerms, "file with one term per line (arrays)");
  app.add_option("--grid-size", cfg.gridSize, "columns in the arrays")->check(isNumber);
  app.add_option("--sigma-row", cfg.sigmaRow, "row whose diagonal cell is analyzed");

  auto table = handlers();
  std::map<std::string, std::vector<std::string>> positional;
  for (auto& [name, entry] : table) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->fallthrough();
    sub->add_option("args", positional[name], "arguments")->allow_extra_args();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (e.get_exit_code() != 0) err << app.help();
    return kInvalidInput;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Outcome outcome;
  try {
    SchemeOptions opts;
    opts.muCutoff = cfg.muCutoff;
    auto scheme = makeScheme(cfg.scheme, opts);
    outcome = table.at(command).second(cfg, *scheme, positional[command]);
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvalidCode& e) {
    err << "invalid code: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const OutOfRange& e) {
    err << "out of range: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const SearchLimitExceeded& e) {
    err << "search limit: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "out of range: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "unsupported: " << e.what() << "\n";
    return kInvalidInput;
  }

  if (cfg.format == "json") {
    Json envelope{{"command", command}, {"config", toJson(cfg)}, {"result", std::move(outcome.result)},
                  {"version", kVersion}};
    out << envelope.dump(2) << "\n";
  } else {
    out << outcome.text << "\n";
  }
  return outcome.clean ? kOk : kCheckFailed;
}

}  // namespace selfref::cli

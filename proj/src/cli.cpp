#include "topweight/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "topweight/arith.hpp"
#include "topweight/graphcore.hpp"
#include "topweight/orbigraph.hpp"
#include "topweight/parallel.hpp"
#include "topweight/symfunc.hpp"
#include "topweight/zagier.hpp"

namespace topweight {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every command fills all three renderings; the chosen format is printed.
struct Output {
  json doc;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> text;
  int status = kExitOk;
  std::string diagnostic;
};

std::string join(const std::vector<int>& xs, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string monomial_text(const Partition& p) {
  if (p.empty()) return "1";
  std::string out;
  for (int x : p.parts()) out += (out.empty() ? "p" : "*p") + std::to_string(x);
  return out;
}

json rational_json(const Rational& q, const RunConfig& c) {
  json j = to_json(q);
  if (c.decimal) j["decimal_lossy"] = q.decimal(*c.decimal);
  return j;
}

json series_json(const PSeries& s, const RunConfig& c) {
  json j = to_json(s);
  if (c.decimal) {
    auto it = s.terms().begin();
    for (auto& term : j["terms"]) term["decimal_lossy"] = (it++)->second.decimal(*c.decimal);
  }
  return j;
}

std::vector<std::string> rational_cells(const Rational& q, const RunConfig& c) {
  std::vector<std::string> cells{q.numerator_str(), q.denominator_str()};
  if (c.decimal) cells.push_back(q.decimal(*c.decimal));
  return cells;
}

std::vector<std::string> rational_header(const std::string& prefix, const RunConfig& c) {
  std::vector<std::string> cells{prefix + "num", prefix + "den"};
  if (c.decimal) cells.push_back(prefix + "decimal_lossy");
  return cells;
}

std::string rational_text(const Rational& q, const RunConfig& c) {
  std::string out = q.str();
  if (c.decimal) out += " (~" + q.decimal(*c.decimal) + ")";
  return out;
}

void append(std::vector<std::string>& row, const std::vector<std::string>& more) {
  row.insert(row.end(), more.begin(), more.end());
}

void fill_series(Output& o, const PSeries& s, const RunConfig& c) {
  o.doc = series_json(s, c);
  o.csv_header = {"partition"};
  append(o.csv_header, rational_header("", c));
  o.text.push_back("truncation " + std::to_string(s.truncation()));
  for (const auto& [p, q] : s.terms()) {
    std::vector<std::string> row{join(p.parts())};
    append(row, rational_cells(q, c));
    o.csv_rows.push_back(std::move(row));
    o.text.push_back(rational_text(q, c) + " " + monomial_text(p));
  }
  if (s.is_zero()) o.text.push_back("0");
}

// First partition (canonical order) where the two series differ.
std::optional<Partition> first_difference(const PSeries& a, const PSeries& b) {
  std::set<Partition, CanonicalOrder> keys;
  for (const auto& [p, q] : a.terms()) keys.insert(p);
  for (const auto& [p, q] : b.terms()) keys.insert(p);
  for (const auto& p : keys) {
    const Rational x = p.size() <= a.truncation() ? a.coeff(p) : Rational(0);
    const Rational y = p.size() <= b.truncation() ? b.coeff(p) : Rational(0);
    if (x != y) return p;
  }
  return std::nullopt;
}

int truncation_of(const RunConfig& c) {
  const int N = c.truncation.value_or(default_truncation(c.genus));
  if (N < 0) throw UsageError("--truncate must be >= 0");
  return N;
}

int require_n(const RunConfig& c) {
  if (!c.n) throw UsageError(c.command + " needs --n");
  if (*c.n < 0) throw UsageError("--n must be >= 0");
  return *c.n;
}

void require_genus_at_least(const RunConfig& c, int g) {
  if (c.genus < g) throw UsageError(c.command + " needs --genus >= " + std::to_string(g));
}

void mark_disagreement(Output& o, const std::string& what) {
  o.status = kExitDisagreement;
  o.diagnostic = "pipelines disagree: " + what;
}

Output cmd_zg(const RunConfig& c) {
  Output o;
  fill_series(o, z_series(c.genus, truncation_of(c), c.jobs), c);
  return o;
}

Output cmd_euler(const RunConfig& c) {
  const int n = require_n(c);
  Output o;
  const Rational series = top_weight_euler(c.genus, n, c.jobs);
  std::optional<Rational> closed;
  try {
    closed = top_weight_euler_closed(c.genus, n);
  } catch (const std::domain_error&) {
  }
  const bool agree = closed && *closed == series;
  o.doc = json{{"genus", c.genus},
               {"n", n},
               {"series", rational_json(series, c)},
               {"closed", closed ? rational_json(*closed, c) : json(nullptr)},
               {"closed_form_applicable", closed.has_value()},
               {"agreement", closed ? json(agree) : json(nullptr)}};
  o.csv_header = {"genus", "n"};
  append(o.csv_header, rational_header("series_", c));
  append(o.csv_header, rational_header("closed_", c));
  o.csv_header.push_back("agreement");
  std::vector<std::string> row{std::to_string(c.genus), std::to_string(n)};
  append(row, rational_cells(series, c));
  append(row, closed ? rational_cells(*closed, c) : std::vector<std::string>(c.decimal ? 3 : 2, ""));
  row.push_back(closed ? (agree ? "true" : "false") : "");
  o.csv_rows.push_back(std::move(row));
  o.text.push_back("series: " + rational_text(series, c));
  o.text.push_back("closed: " + (closed ? rational_text(*closed, c) : std::string("outside validity range")));
  if (closed) o.text.push_back(std::string("agreement: ") + (agree ? "true" : "false"));
  if (closed && !agree) {
    mark_disagreement(o, "coefficient of p1^" + std::to_string(n) + ": series gives " + series.str() +
                             ", closed form gives " + closed->str());
  }
  return o;
}

Output cmd_schur(const RunConfig& c) {
  const int n = require_n(c);
  const SchurTable t = equivariant_table(c.genus, n, c.jobs);
  Output o;
  o.doc = to_json(t);
  if (c.decimal) {
    auto it = t.coefficients.begin();
    for (auto& term : o.doc["terms"]) term["decimal_lossy"] = (it++)->second.decimal(*c.decimal);
  }
  o.csv_header = {"partition"};
  append(o.csv_header, rational_header("", c));
  for (const auto& [p, q] : t.coefficients) {
    std::vector<std::string> row{join(p.parts())};
    append(row, rational_cells(q, c));
    o.csv_rows.push_back(std::move(row));
    o.text.push_back("s(" + join(p.parts(), ",") + ") " + rational_text(q, c));
  }
  return o;
}

Output cmd_oracle_graphs(const RunConfig& c) {
  require_genus_at_least(c, 2);
  const int N = truncation_of(c);
  const PLaurent formula = z_g_laurent(c.genus, c.jobs);
  const PLaurent oracle = z_g_graph_oracle_laurent(c.genus, c.jobs);
  const std::size_t graphs = enumerate_stable_graphs(c.genus).size();
  const PSeries fs = formula.to_series(N), os = oracle.to_series(N);
  const auto diff = first_difference(fs, os);
  const bool agree = formula == oracle;

  Output o;
  o.doc = json{{"genus", c.genus},
               {"truncation", N},
               {"graph_count", graphs},
               {"formula", series_json(fs, c)},
               {"oracle", series_json(os, c)},
               {"agreement", agree},
               {"first_difference", diff ? json(diff->parts()) : json(nullptr)}};
  o.csv_header = {"partition"};
  append(o.csv_header, rational_header("formula_", c));
  append(o.csv_header, rational_header("oracle_", c));
  std::set<Partition, CanonicalOrder> keys;
  for (const auto& [p, q] : fs.terms()) keys.insert(p);
  for (const auto& [p, q] : os.terms()) keys.insert(p);
  o.text.push_back("stable graphs: " + std::to_string(graphs));
  for (const auto& p : keys) {
    std::vector<std::string> row{join(p.parts())};
    append(row, rational_cells(fs.coeff(p), c));
    append(row, rational_cells(os.coeff(p), c));
    o.csv_rows.push_back(std::move(row));
    o.text.push_back(monomial_text(p) + ": formula " + rational_text(fs.coeff(p), c) + ", oracle " +
                     rational_text(os.coeff(p), c));
  }
  o.text.push_back(std::string("agreement: ") + (agree ? "true" : "false"));
  if (!agree) {
    if (diff) {
      mark_disagreement(o, "coefficient of " + monomial_text(*diff) + ": formula " + fs.coeff(*diff).str() +
                               ", oracle " + os.coeff(*diff).str());
    } else {
      mark_disagreement(o, "Laurent expansions differ beyond degree " + std::to_string(N));
    }
  }
  return o;
}

Output cmd_oracle_orbifold(const RunConfig& c) {
  const int n = require_n(c);
  Rational closed;
  try {
    closed = chi_orb(c.genus, n);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const Rational oracle = chi_orb_oracle(c.genus, n);
  const bool agree = closed == oracle;
  Output o;
  o.doc = json{{"genus", c.genus},
               {"n", n},
               {"closed", rational_json(closed, c)},
               {"oracle", rational_json(oracle, c)},
               {"agreement", agree}};
  o.csv_header = {"genus", "n"};
  append(o.csv_header, rational_header("closed_", c));
  append(o.csv_header, rational_header("oracle_", c));
  o.csv_header.push_back("agreement");
  std::vector<std::string> row{std::to_string(c.genus), std::to_string(n)};
  append(row, rational_cells(closed, c));
  append(row, rational_cells(oracle, c));
  row.push_back(agree ? "true" : "false");
  o.csv_rows.push_back(std::move(row));
  o.text = {"closed: " + rational_text(closed, c), "oracle: " + rational_text(oracle, c),
            std::string("agreement: ") + (agree ? "true" : "false")};
  if (!agree) mark_disagreement(o, "closed " + closed.str() + ", oracle " + oracle.str());
  return o;
}

Output cmd_oracle_gamma(const RunConfig& c) {
  if (c.m < 1) throw UsageError("--m must be >= 1");
  if (c.r < 0) throw UsageError("--r must be >= 0");
  for (int x : c.d) {
    if (x < 1) throw UsageError("--d entries must be positive");
  }
  int D = c.m;
  for (int x : c.d) D = std::gcd(D, x);
  const Rational formula = gamma_formula(c.m, c.r, D);
  const Rational oracle = gamma_oracle(c.m, c.r, c.d);
  const bool agree = formula == oracle;
  Output o;
  o.doc = json{{"m", c.m},
               {"r", c.r},
               {"d", c.d},
               {"D", D},
               {"formula", rational_json(formula, c)},
               {"oracle", rational_json(oracle, c)},
               {"agreement", agree}};
  o.csv_header = {"m", "r", "d", "D"};
  append(o.csv_header, rational_header("formula_", c));
  append(o.csv_header, rational_header("oracle_", c));
  o.csv_header.push_back("agreement");
  std::vector<std::string> row{std::to_string(c.m), std::to_string(c.r), join(c.d), std::to_string(D)};
  append(row, rational_cells(formula, c));
  append(row, rational_cells(oracle, c));
  row.push_back(agree ? "true" : "false");
  o.csv_rows.push_back(std::move(row));
  o.text = {"D: " + std::to_string(D), "formula: " + rational_text(formula, c),
            "oracle: " + rational_text(oracle, c), std::string("agreement: ") + (agree ? "true" : "false")};
  if (!agree) mark_disagreement(o, "formula " + formula.str() + ", oracle " + oracle.str());
  return o;
}

Output cmd_dump_terms(const RunConfig& c) {
  require_genus_at_least(c, 2);
  const auto terms = enumerate_terms(c.genus);
  Output o;
  o.doc = json::array();
  o.csv_header = {"k", "m", "r", "s", "d", "a"};
  append(o.csv_header, rational_header("", c));
  for (const auto& t : terms) {
    const Rational q = term_coefficient(t);
    json j = to_json(t);
    j["coefficient"] = rational_json(q, c);
    o.doc.push_back(std::move(j));
    std::vector<std::string> row{std::to_string(t.k), std::to_string(t.m), std::to_string(t.r),
                                 std::to_string(t.s), join(t.d), join(t.a)};
    append(row, rational_cells(q, c));
    o.csv_rows.push_back(std::move(row));
    o.text.push_back("k=" + std::to_string(t.k) + " m=" + std::to_string(t.m) + " r=" + std::to_string(t.r) +
                     " d=(" + join(t.d, ",") + ") a=(" + join(t.a, ",") + ") " + rational_text(q, c));
  }
  return o;
}

Output cmd_dump_graphs(const RunConfig& c) {
  std::vector<MarkedGraph> graphs;
  std::string marking = "none";
  if (c.n) {
    const int n = require_n(c);
    if (2 * c.genus - 2 + n <= 0) throw UsageError("unstable range");
    if (c.pure) {
      graphs = enumerate_marked_graphs_p(c.genus, n);
      marking = "arbitrary";
    } else {
      graphs = enumerate_marked_graphs_injective(c.genus, n);
      marking = "injective";
    }
  } else {
    require_genus_at_least(c, 2);
    for (auto& g : enumerate_stable_graphs(c.genus)) graphs.push_back({std::move(g), {}});
  }
  Output o;
  o.doc = json{{"genus", c.genus}, {"n", c.n ? json(*c.n) : json(nullptr)}, {"marking", marking}};
  o.doc["graphs"] = json::array();
  o.csv_header = {"index", "vertices", "edges", "automorphisms", "s", "r", "marking"};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& mg = graphs[i];
    const std::size_t order = automorphisms(mg, MarkingRule::Fixed).size();
    json j = to_json(mg);
    j["automorphisms"] = order;
    o.doc["graphs"].push_back(std::move(j));
    o.csv_rows.push_back({std::to_string(i), std::to_string(mg.graph.num_vertices()),
                          std::to_string(mg.graph.num_edges()), std::to_string(order),
                          join(mg.graph.involution()), join(mg.graph.attachment()), join(mg.marking)});
    std::string line = "#" + std::to_string(i) + " |V|=" + std::to_string(mg.graph.num_vertices()) +
                       " |Aut|=" + std::to_string(order) + " edges:";
    for (const auto& [a, b] : mg.graph.endpoint_pairs()) line += " " + std::to_string(a) + "-" + std::to_string(b);
    if (!mg.marking.empty()) line += " marking: " + join(mg.marking, ",");
    o.text.push_back(std::move(line));
  }
  return o;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void render(const Output& o, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << o.doc.dump(2) << "\n";
  } else if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
      os << "\n";
    };
    line(o.csv_header);
    for (const auto& row : o.csv_rows) line(row);
  } else {
    for (const auto& l : o.text) os << l << "\n";
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"zg",           "euler",           "schur",      "oracle-graphs",
                                              "oracle-orbifold", "oracle-gamma", "dump-terms", "dump-graphs"};
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.genus < 0) throw UsageError("--genus must be >= 0");
    if (config.format != "json" && config.format != "csv" && config.format != "text") {
      throw UsageError("--format must be json, csv or text");
    }
    if (config.decimal && *config.decimal < 0) throw UsageError("--decimal must be >= 0");
    Output o;
    const std::string& cmd = config.command;
    if (cmd == "zg") {
      o = cmd_zg(config);
    } else if (cmd == "euler") {
      o = cmd_euler(config);
    } else if (cmd == "schur") {
      o = cmd_schur(config);
    } else if (cmd == "oracle-graphs") {
      o = cmd_oracle_graphs(config);
    } else if (cmd == "oracle-orbifold") {
      o = cmd_oracle_orbifold(config);
    } else if (cmd == "oracle-gamma") {
      o = cmd_oracle_gamma(config);
    } else if (cmd == "dump-terms") {
      o = cmd_dump_terms(config);
    } else if (cmd == "dump-graphs") {
      o = cmd_dump_graphs(config);
    } else {
      throw UsageError("unknown command '" + cmd + "'");
    }
    if (config.output) {
      std::ofstream file(*config.output);
      if (!file) throw UsageError("cannot open " + *config.output);
      render(o, config.format, file);
    } else {
      render(o, config.format, out);
    }
    if (o.status != kExitOk) err << o.diagnostic << "\n";
    return o.status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.jobs = default_jobs();
  int n = -1, truncation = -1, decimal = -1;

  CLI::App app{"Exact top-weight Euler characteristics of moduli of curves", "topweight"};
  app.add_option("command", config.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--genus,-g", config.genus, "Genus g");
  app.add_option("--n", n, "Number of markings");
  app.add_option("--truncate", truncation, "Truncation degree N (default 3g+6)");
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  std::string output;
  app.add_option("--output,-o", output, "Write output to this file instead of stdout");
  app.add_option("--decimal", decimal, "Also render values as lossy decimals with this many digits");
  app.add_option("--jobs,-j", config.jobs, "Worker threads (default: TOPWEIGHT_JOBS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--m", config.m, "oracle-gamma: modulus m");
  app.add_option("--r", config.r, "oracle-gamma: rank r");
  app.add_option("--d", config.d, "oracle-gamma: comma-separated d list")->delimiter(',');
  app.add_flag("--pure", config.pure, "dump-graphs: allow non-injective markings");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (app.count("--n")) config.n = n;
  if (app.count("--truncate")) config.truncation = truncation;
  if (app.count("--decimal")) config.decimal = decimal;
  if (app.count("--output")) config.output = output;
  return run(config, out, err);
}

}  // namespace topweight

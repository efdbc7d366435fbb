// Command-line front end: exact tables, series expansions and the
// verification suites.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "qvir/dvir.hpp"
#include "qvir/gmac.hpp"
#include "qvir/intertwiner.hpp"
#include "qvir/nekrasov.hpp"
#include "qvir/suites.hpp"

using namespace qvir;

namespace {

struct TableData {
  std::string kind;
  int level;
  int arity;
  std::vector<std::string> rows, cols;
  std::vector<std::vector<std::string>> entries;
};

TableData matrix_table(const std::string& kind, int level, int arity,
                       const std::vector<PartitionTuple>& tuples,
                       const RatMatrix& m) {
  TableData t;
  t.kind = kind;
  t.level = level;
  t.arity = arity;
  for (auto& tup : tuples) {
    t.rows.push_back(tup.text());
    t.cols.push_back(tup.text());
  }
  t.entries.resize(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      t.entries[i].push_back(m(i, j).text());
  return t;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void render_json(std::ostream& os, const TableData& t) {
  os << "{\"kind\":\"" << t.kind << "\",\"level\":" << t.level
     << ",\"arity\":" << t.arity << ",\"rows\":[";
  for (size_t i = 0; i < t.rows.size(); ++i)
    os << (i ? "," : "") << "\"" << json_escape(t.rows[i]) << "\"";
  os << "],\"cols\":[";
  for (size_t i = 0; i < t.cols.size(); ++i)
    os << (i ? "," : "") << "\"" << json_escape(t.cols[i]) << "\"";
  os << "],\"entries\":[";
  for (size_t i = 0; i < t.entries.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < t.entries[i].size(); ++j)
      os << (j ? "," : "") << "\"" << json_escape(t.entries[i][j]) << "\"";
    os << "]";
  }
  os << "]}";
}

void render_text(std::ostream& os, const TableData& t) {
  os << t.kind << " level " << t.level << "\n";
  size_t wrow = 0;
  for (auto& r : t.rows) wrow = std::max(wrow, r.size());
  std::vector<size_t> wcol(t.cols.size());
  for (size_t j = 0; j < t.cols.size(); ++j) {
    wcol[j] = t.cols[j].size();
    for (auto& row : t.entries) wcol[j] = std::max(wcol[j], row[j].size());
  }
  os << std::string(wrow, ' ');
  for (size_t j = 0; j < t.cols.size(); ++j)
    os << "  " << t.cols[j] << std::string(wcol[j] - t.cols[j].size(), ' ');
  os << "\n";
  for (size_t i = 0; i < t.rows.size(); ++i) {
    os << t.rows[i] << std::string(wrow - t.rows[i].size(), ' ');
    for (size_t j = 0; j < t.cols.size(); ++j)
      os << "  " << t.entries[i][j]
         << std::string(wcol[j] - t.entries[i][j].size(), ' ');
    os << "\n";
  }
}

void render_latex(std::ostream& os, const TableData& t) {
  os << "% " << t.kind << " level " << t.level << "\n";
  os << "\\begin{array}{c||";
  for (size_t j = 0; j < t.cols.size(); ++j) os << "c";
  os << "}\n & ";
  for (size_t j = 0; j < t.cols.size(); ++j)
    os << t.cols[j] << (j + 1 < t.cols.size() ? " & " : " \\\\ \\hline\n");
  for (size_t i = 0; i < t.rows.size(); ++i) {
    os << t.rows[i] << " & ";
    for (size_t j = 0; j < t.entries[i].size(); ++j)
      os << t.entries[i][j] << (j + 1 < t.entries[i].size() ? " & " : " \\\\\n");
  }
  os << "\\end{array}\n";
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

TableData build_table(const std::string& kind, int level, int arity) {
  if (kind == "alpha" || kind == "beta") {
    auto reg = make_registry({"q", "t", "u1", "u2"});
    GMacTable tab = generalized_macdonald(reg, level, arity);
    fill_integral_form(tab, {x1_family(reg, 2, false), x2_family(reg, false)});
    return matrix_table(kind, level, arity, tab.tuples,
                        kind == "alpha" ? tab.alpha_paper() : tab.beta);
  }
  if (kind == "c_tilde" || kind == "c_tilde_star" || kind == "alpha_tilde" ||
      kind == "beta_tilde") {
    auto reg = make_registry({"q", "t", "u1", "u2"});
    GMacTable tab = crystal_generalized_hl(reg, level);
    const RatMatrix& m = kind == "c_tilde"        ? tab.c
                         : kind == "c_tilde_star" ? tab.c_star
                         : kind == "alpha_tilde"  ? tab.alpha_scaled
                                                  : tab.beta;
    return matrix_table(kind, level, arity, tab.tuples, m);
  }
  if (kind == "shapovalov") {
    auto reg = make_registry({"q", "t", "u1", "u2"});
    ShapovalovPair sh = crystal_shapovalov(reg, level);
    return matrix_table(kind, level, arity, sh.tuples, sh.s);
  }
  if (kind == "kac" || kind == "kac_tilde") {
    auto reg = make_registry({"q", "t", "k"});
    RatMatrix b = kac_matrix(t_family(reg, kind == "kac_tilde"), level);
    return matrix_table(kind, level, 1, enumerate_tuples(level, 1), b);
  }
  throw Error("unknown table kind: " + kind);
}

int run_table(const std::string& kind, const std::string& levels,
              const std::string& format, int arity) {
  auto lv = parse_levels(levels);
  std::ostringstream os;
  if (format == "json") {
    os << "[";
    for (size_t i = 0; i < lv.size(); ++i) {
      if (i) os << ",";
      render_json(os, build_table(kind, lv[i], arity));
    }
    os << "]\n";
  } else {
    for (int l : lv) {
      TableData t = build_table(kind, l, arity);
      if (format == "latex")
        render_latex(os, t);
      else
        render_text(os, t);
    }
  }
  std::cout << os.str();
  return 0;
}

int run_series(const std::string& which, int order, const std::string& method,
               const std::string& format) {
  std::vector<Rat> coeffs;
  std::string variable;
  if (which == "z_pure") {
    auto reg = make_registry({"q", "t", "Q"});
    coeffs = z_pure(reg, order);
    variable = "L4";
  } else if (which == "z_tilde_pure") {
    auto reg = make_registry({"t", "Q"});
    coeffs = z_tilde_pure(reg, order);
    variable = "Lt4";
  } else if (which == "z_nf4") {
    auto reg = make_registry({"q", "t", "u1", "u2", "v1", "v2", "w1", "w2"});
    coeffs = z_nf4(reg, order);
    variable = "u1*u2*z1/(w1*w2*z2)";
  } else if (which == "whittaker_norm") {
    auto reg = make_registry({"q", "t", "k"});
    coeffs = whittaker_norm(t_family(reg, method == "crystal"), order);
    variable = method == "crystal" ? "Lt4" : "L4";
  } else if (which == "four_point") {
    auto reg = make_registry({"q", "t", "u1", "u2", "v1", "v2", "w1", "w2"});
    FourPointMethod m = method == "pbw"    ? FourPointMethod::pbw
                        : method == "aflt" ? FourPointMethod::aflt
                                           : FourPointMethod::closed;
    coeffs = four_point(reg, order, m);
    variable = "u1*u2*z1/(w1*w2*z2)";
  } else {
    throw Error("unknown series: " + which);
  }
  if (format == "json") {
    std::cout << "{\"series\":\"" << which << "\",\"variable\":\""
              << json_escape(variable) << "\",\"coefficients\":[";
    for (size_t i = 0; i < coeffs.size(); ++i)
      std::cout << (i ? "," : "") << "\"" << json_escape(coeffs[i].text())
                << "\"";
    std::cout << "]}\n";
  } else {
    for (size_t i = 0; i < coeffs.size(); ++i)
      std::cout << "[" << i << "] " << coeffs[i].text() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact deformed-Virasoro / Fock-module toolkit"};
  app.require_subcommand(1);

  std::string levels = "1";
  std::string format = "json";
  std::string mode = "symbolic";
  int arity = 2;
  int order = 2;
  int workers = 1;
  std::string method = "closed";
  std::string suite = "all";
  std::string kind, which;

  auto* table = app.add_subcommand("table", "emit an exact table");
  table->add_option("kind", kind,
                    "alpha|beta|c_tilde|c_tilde_star|alpha_tilde|beta_tilde|"
                    "shapovalov|kac|kac_tilde")
      ->required();
  table->add_option("--level,-L", levels, "level or comma list");
  table->add_option("--arity,-N", arity, "tuple arity");
  table->add_option("--format", format, "json|text|latex");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "dvir|nekrasov|gmac|intertwiner|laurent|all");
  verify->add_option("--level,-L", levels, "level bound");
  verify->add_option("--workers", workers, "parallel workers");
  verify->add_option("--format", format, "json|text");
  verify->add_option("--mode", mode, "symbolic|fingerprint-first");

  auto* series = app.add_subcommand("series", "emit series coefficients");
  series->add_option("which", which,
                     "z_pure|z_tilde_pure|z_nf4|whittaker_norm|four_point")
      ->required();
  series->add_option("--order", order, "highest order");
  series->add_option("--method", method, "closed|pbw|aflt|crystal|generic");
  series->add_option("--format", format, "json|text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) return run_table(kind, levels, format, arity);
    if (*series) return run_series(which, order, method, format);
    if (*verify) {
      SuiteConfig cfg;
      cfg.level = parse_levels(levels)[0];
      cfg.workers = workers;
      cfg.fingerprint_first = mode != "symbolic";
      CheckReport report = run_suite(suite, cfg);
      std::cout << (format == "text" ? report.to_text() : report.to_json() + "\n");
      return report.any_theorem_failure() ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "maxplus/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "maxplus/csr.hpp"
#include "maxplus/digraph.hpp"
#include "maxplus/io.hpp"
#include "maxplus/oracle.hpp"

namespace maxplus::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt parse_nonnegative(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(std::string(what) + " must be a nonnegative integer, got '" + text + "'");
  return BigInt(text);
}

std::string circuit_text(const std::vector<std::size_t>& nodes) {
  std::string s = "(";
  for (std::size_t v : nodes) s += std::to_string(v + 1) + ",";
  return s + std::to_string(nodes.front() + 1) + ")";
}

std::string multicircuit_text(const MultiCircuit& m) {
  std::string s = "{";
  for (std::size_t k = 0; k < m.circuits.size(); ++k) s += (k ? "," : "") + circuit_text(m.circuits[k].nodes);
  return s + "}";
}

std::string node_list(const std::vector<std::size_t>& nodes) {
  std::string s = "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) s += (k ? "," : "") + std::to_string(nodes[k] + 1);
  return s + "}";
}

void print_vector(std::ostream& out, const std::vector<Scalar>& v) {
  out << "(";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k];
  out << ")\n";
}

// Right-aligned columns, one row per line.
void print_matrix(std::ostream& out, const TropicalMatrix& m, const std::string& indent = "  ") {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i][j] = m.at(i, j).to_string();
      width = std::max(width, cells[i][j].size());
    }
  for (const auto& row : cells) {
    out << indent;
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << std::setw(static_cast<int>(width)) << row[j];
    out << '\n';
  }
}

struct Loaded {
  TropicalMatrix matrix;
  std::string text;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.text = io::read_file(path);
  l.matrix = io::parse_matrix(l.text);
  return l;
}

int cmd_roots(const std::string& file, std::ostream& out) {
  const Loaded in = load(file);
  const Mmcs m = characteristic_roots(in.matrix);
  for (std::size_t k = 0; k < m.p(); ++k) out << m.roots[k] << " (x" << m.multiplicities[k] << ")\n";
  if (m.epsilon_multiplicity > 0) out << "eps (x" << m.epsilon_multiplicity << ")\n";
  for (std::size_t k = 0; k < m.multicircuits.size(); ++k) {
    const auto& mc = m.multicircuits[k];
    out << "M" << k << " = " << multicircuit_text(mc) << " length " << mc.total_length << " weight "
        << mc.total_weight << '\n';
  }
  return kExitOk;
}

int cmd_expand(const std::string& file, bool reduce, bool as_json, std::ostream& out) {
  const Loaded in = load(file);
  const CsrExpansion x = expand(in.matrix, reduce);
  if (as_json) {
    out << io::expansion_to_json(x, io::sha256_hex(in.text)) << '\n';
    return kExitOk;
  }
  out << "n " << x.n << ", threshold " << x.threshold.get_str() << ", terms " << x.terms.size() << '\n';
  if (x.terms.empty()) out << "acyclic: A^t = E for t >= " << x.n << '\n';
  for (const auto& t : x.terms) {
    out << "term " << t.group + 1 << ": rate " << t.rate << ", circuit " << circuit_text(t.circuit.nodes)
        << ", period " << t.period() << '\n';
    if (t.classes) {
      out << "classes";
      for (const auto& c : *t.classes) out << ' ' << node_list(c);
      out << '\n';
    }
    out << "C\n";
    print_matrix(out, t.c_factor);
    out << "S\n";
    print_matrix(out, t.s_factor);
    out << "R\n";
    print_matrix(out, t.r_factor);
  }
  return kExitOk;
}

int cmd_power(const std::string& file, const std::string& t_text, bool naive, bool csr, std::ostream& out,
              std::ostream& err) {
  const BigInt t = parse_nonnegative(t_text, "t");
  const Loaded in = load(file);
  const std::size_t n = in.matrix.rows();
  if (!naive && !csr) naive = t < static_cast<unsigned long>(2 * n * n);
  if (csr && t < static_cast<unsigned long>(2 * n * n))
    err << "note: t is below the threshold " << 2 * n * n << "; the expansion may differ from A^t\n";
  const TropicalMatrix p = naive ? matrix_power(in.matrix, t) : evaluate_expansion(expand(in.matrix), t);
  out << io::write_dense(p);
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& range, const std::optional<std::uint64_t>& seed,
               std::ostream& out) {
  const Loaded in = load(file);
  const CsrExpansion x = expand(in.matrix);
  BigInt lo = x.threshold, hi = x.threshold + 20;
  if (!range.empty()) {
    const auto dots = range.find("..");
    if (dots == std::string::npos) throw UsageError("--t-range must look like a..b");
    lo = parse_nonnegative(range.substr(0, dots), "range start");
    hi = parse_nonnegative(range.substr(dots + 2), "range end");
    if (hi < lo) throw UsageError("--t-range is empty");
  }
  if (lo < x.threshold)
    out << "note: range starts below the threshold " << x.threshold.get_str() << "; mismatches there are allowed\n";
  std::vector<oracle::OracleReport> reports;
  reports.push_back(oracle::brute_power_check(in.matrix, x, lo, hi, file + " t=" + lo.get_str() + ".." + hi.get_str()));
  if (seed) {
    // Eight extra exponents up to a million past the threshold.
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<unsigned long> offset(0, 1'000'000);
    for (int k = 0; k < 8; ++k) {
      const BigInt t = x.threshold + offset(rng);
      reports.push_back(oracle::brute_power_check(in.matrix, x, t, t, file + " t=" + t.get_str(), seed));
    }
  }
  bool ok = true;
  for (const auto& r : reports) {
    out << r.summary() << '\n';
    ok = ok && r.match;
  }
  return ok ? kExitOk : kExitMismatch;
}

int cmd_visualize(const std::string& file, std::ostream& out) {
  const Loaded in = load(file);
  const ExpansionPipeline p = expand_with_artifacts(in.matrix);
  if (p.partition.r() == 0) {
    out << "acyclic: nothing to visualize\n";
    return kExitOk;
  }
  for (std::size_t s = 0; s < p.partition.r(); ++s) {
    const auto& g = p.visualization.groups[s];
    out << "group " << s + 1 << ": N = " << node_list(p.partition.groups[s]) << ", V = " << node_list(g.nodes)
        << ", rate " << g.rate << ", circuit " << circuit_text(p.partition.quasi_critical[s].nodes) << '\n';
    out << "d = (";
    for (std::size_t k = 0; k < g.potential.d.size(); ++k) out << (k ? " " : "") << g.potential.d[k];
    out << ")\n";
    print_matrix(out, g.matrix);
  }
  return kExitOk;
}

int cmd_eigen(const std::string& file, std::ostream& out) {
  const Loaded in = load(file);
  const WeightedDigraph g = build_graph(in.matrix);
  const Scalar lambda = karp_max_cycle_mean(g);
  out << "lambda " << lambda << '\n';
  if (lambda.is_epsilon()) {
    out << "no finite eigenvalue (acyclic graph)\n";
    return kExitOk;
  }
  const CriticalGraph cg = critical_graph(g, lambda.value());
  out << "critical nodes " << node_list(cg.nodes) << '\n';
  out << "critical arcs";
  for (const auto& [u, v] : cg.arcs) out << " (" << u + 1 << "," << v + 1 << ")";
  out << '\n';
  const CyclicityClasses cc = cyclicity_classes(cg, in.matrix.rows());
  out << "cyclicity " << cc.sigma << '\n';
  for (const auto& ev : principal_eigenvectors(in.matrix)) {
    out << "eigenvector " << ev.node + 1 << " ";
    print_vector(out, ev.vector);
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-plus matrix powers through the CSR expansion", "maxplus-csr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MAXPLUS_VERSION);

  std::string file, t_text, range;
  bool reduce = false, as_json = false, naive = false, csr = false;
  std::optional<std::uint64_t> seed;

  auto* roots = app.add_subcommand("roots", "roots of the characteristic polynomial and the MMCS");
  roots->add_option("file", file, "matrix file")->required();
  auto* expand_cmd = app.add_subcommand("expand", "print the CSR expansion");
  expand_cmd->add_option("file", file, "matrix file")->required();
  expand_cmd->add_flag("--reduce", reduce, "collapse terms onto cyclicity classes");
  expand_cmd->add_flag("--json", as_json, "emit the JSON expansion document");
  auto* power = app.add_subcommand("power", "print A^t");
  power->add_option("file", file, "matrix file")->required();
  power->add_option("t", t_text, "exponent (any size)")->required();
  auto* naive_flag = power->add_flag("--naive", naive, "binary exponentiation");
  auto* csr_flag = power->add_flag("--csr", csr, "evaluate the expansion");
  naive_flag->excludes(csr_flag);
  auto* verify = app.add_subcommand("verify", "compare the expansion with direct powers");
  verify->add_option("file", file, "matrix file")->required();
  verify->add_option("--t-range", range, "inclusive range a..b (default threshold..threshold+20)");
  verify->add_option("--seed", seed, "also check 8 exponents drawn with this seed");
  auto* visualize = app.add_subcommand("visualize", "print d_s and A'_s for every group");
  visualize->add_option("file", file, "matrix file")->required();
  auto* eigen = app.add_subcommand("eigen", "maximum cycle mean, critical graph and eigenvectors");
  eigen->add_option("file", file, "matrix file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (roots->parsed()) return cmd_roots(file, out);
    if (expand_cmd->parsed()) return cmd_expand(file, reduce, as_json, out);
    if (power->parsed()) return cmd_power(file, t_text, naive, csr, out, err);
    if (verify->parsed()) return cmd_verify(file, range, seed, out);
    if (visualize->parsed()) return cmd_visualize(file, out);
    if (eigen->parsed()) return cmd_eigen(file, out);
  } catch (const io::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::ParseError& e) {
    err << "error: malformed matrix in '" << file << "': " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace maxplus::cli

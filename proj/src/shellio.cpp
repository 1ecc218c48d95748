// SPDX-License-Identifier: Apache-2.0

#include "hrr/shellio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hrr/extraction.hpp"

namespace hrr {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, long lineno) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size())
    throw ParseError("bad numeric token '" + tok + "'", lineno);
  return v;
}

long parse_index(const std::string& tok, long lineno) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || v < 1)
    throw ParseError("bad index token '" + tok + "'", lineno);
  return v;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// JSON has no infinity literal; non-finite values become strings.
std::string json_number(double v) {
  if (std::isfinite(v)) return format_scalar(v);
  return "\"" + format_scalar(v) + "\"";
}

std::string json_complex(Complex z) {
  return "{\"re\":" + json_number(z.real()) + ",\"im\":" +
         json_number(z.imag()) + "}";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void json_bound(std::ostringstream& os, const BoundValue& b) {
  os << "{\"name\":\"" << json_escape(b.name) << "\""
     << ",\"value\":" << json_number(b.value)
     << ",\"applicable\":" << (b.applicable ? "true" : "false")
     << ",\"reason\":\"" << json_escape(b.reason) << "\""
     << ",\"components\":{";
  bool first = true;
  for (const auto& [k, v] : b.components) {
    if (!first) os << ",";
    first = false;
    os << "\"" << json_escape(k) << "\":" << json_number(v);
  }
  os << "}}";
}

void json_report_body(std::ostringstream& os, const BoundReport& r) {
  os << "{\"instance\":{"
     << "\"n\":" << r.n << ",\"m\":" << r.m
     << ",\"tau\":" << json_complex(r.tau)
     << ",\"lambda\":" << json_complex(r.lambda) << "}"
     << ",\"thresholds\":{"
     << "\"pencil_infinite\":" << json_number(r.thresholds.pencil_infinite)
     << ",\"b_singular\":" << json_number(r.thresholds.b_singular)
     << ",\"normality\":" << json_number(r.thresholds.normality)
     << ",\"good_subspace\":" << json_number(r.condition_thresholds.good_subspace)
     << ",\"b_conditioning\":" << json_number(r.condition_thresholds.b_conditioning)
     << ",\"sep_min\":" << json_number(r.condition_thresholds.sep_min)
     << ",\"separation_ratio\":"
     << json_number(r.condition_thresholds.separation_ratio) << "}"
     << ",\"actuals\":{"
     << "\"sin_x_K\":" << json_number(r.actual_sin_x_K)
     << ",\"sin_x_xtilde\":" << json_number(r.actual_sin_x_xtilde)
     << ",\"value_error\":" << json_number(r.actual_value_error)
     << ",\"sin_x_imageK\":" << json_number(r.actual_sin_x_imageK)
     << ",\"reciprocal_error\":" << json_number(r.actual_reciprocal_error)
     << ",\"selected_finite\":" << (r.selected_finite ? "true" : "false")
     << ",\"lambda_tilde\":" << json_complex(r.lambda_tilde)
     << ",\"lambda_tilde_best\":" << json_complex(r.lambda_tilde_best)
     << ",\"infinite_pair_count\":" << r.infinite_pair_count
     << ",\"b_sigma_ratio\":" << json_number(r.b_sigma_ratio)
     << ",\"b_inv_norm\":" << json_number(r.b_inv_norm)
     << ",\"uniform_separation\":" << json_number(r.uniform_separation)
     << ",\"refined_residual\":" << json_number(r.refined_residual)
     << ",\"harmonic_residual\":" << json_number(r.harmonic_residual) << "}"
     << ",\"bounds\":[";
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    if (i) os << ",";
    json_bound(os, r.bounds[i]);
  }
  os << "],\"conditions\":{"
     << "\"i\":" << (r.conditions[0] ? "true" : "false")
     << ",\"ii\":" << (r.conditions[1] ? "true" : "false")
     << ",\"iii\":" << (r.conditions[2] ? "true" : "false")
     << ",\"iv\":" << (r.conditions[3] ? "true" : "false") << "}}";
}

// fixed column order, mirroring full_report's bound order
const char* kBoundOrder[] = {
    "stewart", "chen_jia", "jia_vector", "jia_value_e_norm",
    "jia_value_elsner", "sigma_sandwich_lower", "sigma_sandwich_upper",
    "eta_sandwich_lower", "eta_sandwich_upper", "new_harmonic_vector",
    "vecharynski", "subspace_image_angle", "f_norm", "harmonic_value_error"};

}  // namespace

std::string format_scalar(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;

  auto header = split_ws(lower(line));
  if (header.size() < 5 || header[0] != "%%matrixmarket" ||
      header[1] != "matrix")
    throw ParseError("not a Matrix Market matrix header", lineno);
  const std::string format = header[2], field = header[3],
                    symmetry = header[4];
  if (format != "array" && format != "coordinate")
    throw ParseError("unknown format '" + format + "'", lineno);
  if (field == "pattern")
    throw UnsupportedField("pattern matrices carry no values");
  if (field != "real" && field != "complex" && field != "integer")
    throw ParseError("unknown field '" + field + "'", lineno);
  if (symmetry != "general" && symmetry != "symmetric" &&
      symmetry != "hermitian" && symmetry != "skew-symmetric")
    throw ParseError("unknown symmetry '" + symmetry + "'", lineno);

  auto next_data_line = [&](std::vector<std::string>& toks) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      toks = split_ws(line);
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  if (!next_data_line(toks)) throw ParseError("missing size line", lineno);
  const std::size_t size_fields = format == "coordinate" ? 3 : 2;
  if (toks.size() != size_fields)
    throw ParseError("bad size line", lineno);
  const long rows = parse_index(toks[0], lineno);
  const long cols = parse_index(toks[1], lineno);
  const long nnz = format == "coordinate" ? parse_index(toks[2], lineno) : 0;
  if (symmetry != "general" && rows != cols)
    throw ParseError(symmetry + " storage requires a square matrix", lineno);

  Matrix A = Matrix::Zero(rows, cols);
  const bool complex_field = field == "complex";

  auto mirror = [&](long i, long j, Complex v) {
    A(i, j) = v;
    if (i == j || symmetry == "general") return;
    if (symmetry == "symmetric") A(j, i) = v;
    else if (symmetry == "hermitian") A(j, i) = std::conj(v);
    else A(j, i) = -v;  // skew-symmetric
  };

  if (format == "array") {
    for (long j = 0; j < cols; ++j) {
      long i0 = 0;
      if (symmetry != "general") i0 = symmetry == "skew-symmetric" ? j + 1 : j;
      for (long i = i0; i < rows; ++i) {
        if (!next_data_line(toks))
          throw ParseError("unexpected end of array data", lineno);
        if (toks.size() != (complex_field ? 2u : 1u))
          throw ParseError("bad array entry", lineno);
        Complex v(parse_double(toks[0], lineno),
                  complex_field ? parse_double(toks[1], lineno) : 0.0);
        mirror(i, j, v);
      }
    }
  } else {
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(toks))
        throw ParseError("unexpected end of coordinate data", lineno);
      if (toks.size() != (complex_field ? 4u : 3u))
        throw ParseError("bad coordinate entry", lineno);
      const long i = parse_index(toks[0], lineno) - 1;
      const long j = parse_index(toks[1], lineno) - 1;
      if (i >= rows || j >= cols)
        throw ParseError("entry index out of range", lineno);
      Complex v(parse_double(toks[2], lineno),
                complex_field ? parse_double(toks[3], lineno) : 0.0);
      mirror(i, j, v);
    }
  }
  return A;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty complex literal", 0);

  auto to_double = [&](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size())
      throw ParseError("bad complex literal '" + text + "'", 0);
    return v;
  };

  const bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) return Complex(to_double(s), 0.0);

  const std::string body = s.substr(0, s.size() - 1);
  // last sign that is not an exponent sign splits real and imaginary parts
  std::size_t split = std::string::npos;
  for (std::size_t p = 1; p < body.size(); ++p) {
    if ((body[p] == '+' || body[p] == '-') &&
        body[p - 1] != 'e' && body[p - 1] != 'E')
      split = p;
  }
  if (split == std::string::npos) return Complex(0.0, to_double(body));
  return Complex(to_double(body.substr(0, split)),
                 to_double(body.substr(split)));
}

std::string report_to_json(const BoundReport& report) {
  std::ostringstream os;
  json_report_body(os, report);
  os << "\n";
  return os.str();
}

std::string report_to_csv(const BoundReport& report) {
  std::ostringstream os;
  os << "name,value,applicable,reason,actual\n";
  for (const auto& b : report.bounds) {
    auto it = b.components.find("actual");
    os << csv_field(b.name) << "," << format_scalar(b.value) << ","
       << (b.applicable ? "true" : "false") << "," << csv_field(b.reason)
       << "," << (it == b.components.end() ? "" : format_scalar(it->second))
       << "\n";
  }
  return os.str();
}

std::string sweep_to_json(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "{\"sweep\":[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (i) os << ",";
    os << "{\"tau\":" << json_complex(rec.tau)
       << ",\"skipped\":" << (rec.skipped ? "true" : "false")
       << ",\"reason\":\"" << json_escape(rec.skip_reason) << "\"";
    if (!rec.skipped) {
      os << ",\"report\":";
      json_report_body(os, rec.report);
    }
    os << "}";
  }
  os << "]}\n";
  return os.str();
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "re_tau,im_tau,skipped,reason,uniform_separation,sin_x_K,"
        "sin_x_xtilde,value_error,b_sigma_ratio";
  for (const char* name : kBoundOrder) os << "," << name;
  os << "\n";
  for (const auto& rec : records) {
    os << format_scalar(rec.tau.real()) << "," << format_scalar(rec.tau.imag())
       << "," << (rec.skipped ? "true" : "false") << ","
       << csv_field(rec.skip_reason);
    if (rec.skipped) {
      for (std::size_t k = 0; k < 5 + std::size(kBoundOrder); ++k) os << ",";
      os << "\n";
      continue;
    }
    const auto& r = rec.report;
    os << "," << format_scalar(r.uniform_separation)
       << "," << format_scalar(r.actual_sin_x_K)
       << "," << format_scalar(r.actual_sin_x_xtilde)
       << "," << format_scalar(r.actual_value_error)
       << "," << format_scalar(r.b_sigma_ratio);
    for (const char* name : kBoundOrder) {
      os << ",";
      for (const auto& b : r.bounds)
        if (b.name == name) {
          if (b.applicable) os << format_scalar(b.value);
          break;
        }
    }
    os << "\n";
  }
  return os.str();
}

std::string campaign_to_json(const CampaignSummary& s) {
  std::ostringstream os;
  os << "{\"instances\":" << s.instances << ",\"reports\":" << s.reports
     << ",\"skipped\":" << s.skipped << ",\"violations\":[";
  for (std::size_t i = 0; i < s.violations.size(); ++i) {
    const auto& v = s.violations[i];
    if (i) os << ",";
    os << "{\"instance\":" << v.instance << ",\"bound\":\""
       << json_escape(v.bound) << "\",\"value\":" << json_number(v.value)
       << ",\"actual\":" << json_number(v.actual) << "}";
  }
  os << "],\"min_tightness\":" << json_number(s.min_tightness)
     << ",\"max_tightness\":" << json_number(s.max_tightness)
     << ",\"notes\":[";
  for (std::size_t i = 0; i < s.notes.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(s.notes[i]) << "\"";
  }
  os << "]}\n";
  return os.str();
}

std::string campaign_to_csv(const CampaignSummary& s) {
  std::ostringstream os;
  os << "instances,reports,skipped,violations,min_tightness,max_tightness\n";
  os << s.instances << "," << s.reports << "," << s.skipped << ","
     << s.violations.size() << "," << format_scalar(s.min_tightness) << ","
     << format_scalar(s.max_tightness) << "\n";
  return os.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace {

struct CommonOpts {
  std::string out;
  std::string format = "json";
  Thresholds thresholds;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--out", o.out, "output file (default: stdout)");
  sub->add_option("--format", o.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threshold-pencil-infinite", o.thresholds.pencil_infinite,
                  "|beta| <= t*max(|alpha|,|beta|) flags an infinite pair")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threshold-b-singular", o.thresholds.b_singular,
                  "sigma_min(B) <= t*sigma_max(B) declares B singular")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threshold-normality", o.thresholds.normality,
                  "||A^H A - A A^H|| <= t*||A||^2 marks A normal")
      ->check(CLI::PositiveNumber);
}

GridSpec parse_grid(const std::string& text) {
  // re0:re1:n[,im0:im1:n]
  GridSpec g;
  auto parse_axis = [&](const std::string& part, double& a, double& b,
                        int& n) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t p = 0; p <= part.size(); ++p) {
      if (p == part.size() || part[p] == ':') {
        f.push_back(part.substr(start, p - start));
        start = p + 1;
      }
    }
    if (f.size() != 3) throw ParseError("bad grid axis '" + part + "'", 0);
    a = parse_double(f[0], 0);
    b = parse_double(f[1], 0);
    n = int(parse_index(f[2], 0));
  };
  const std::size_t comma = text.find(',');
  parse_axis(text.substr(0, comma), g.re0, g.re1, g.n_re);
  if (comma != std::string::npos)
    parse_axis(text.substr(comma + 1), g.im0, g.im1, g.n_im);
  return g;
}

// eigenpair of A nearest the target point
std::pair<Complex, Vector> nearest_eigenpair(const Matrix& A, Complex target) {
  EigenDecomposition ed = eig_dense(A);
  Index best = 0;
  for (Index i = 1; i < ed.values.size(); ++i)
    if (std::abs(ed.values(i) - target) < std::abs(ed.values(best) - target))
      best = i;
  Vector x = phase_normalize(ed.vectors.col(best));
  x.normalize();
  return {ed.values(best), x};
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Harmonic Rayleigh-Ritz extraction and a-priori bound reports"};
  app.require_subcommand(1);

  CommonOpts ex_opts, bd_opts, sw_opts, cp_opts;
  double ex_epsilon = 0.0;

  auto* ex = app.add_subcommand(
      "example1", "3x3 worked example: exact or perturbed subspace");
  auto* ex_eps = ex->add_option(
      "--epsilon", ex_epsilon, "perturbation of V(3,1); omit for exact");
  add_common(ex, ex_opts);

  std::string bd_matrix, bd_subspace, bd_tau = "0";
  auto* bd = app.add_subcommand(
      "bounds", "bound report for a matrix, subspace and shift");
  bd->add_option("--matrix", bd_matrix, "Matrix Market file for A")
      ->required();
  bd->add_option("--subspace", bd_subspace,
                 "Matrix Market file whose columns span K")
      ->required();
  bd->add_option("--tau", bd_tau, "shift, complex literal a+bi")->required();
  add_common(bd, bd_opts);

  std::string sw_matrix, sw_subspace, sw_grid, sw_target;
  double sw_epsilon = 1e-6;
  auto* sw = app.add_subcommand(
      "sweep", "bound report on a tau grid (default: the worked example)");
  sw->add_option("--matrix", sw_matrix, "Matrix Market file for A");
  sw->add_option("--subspace", sw_subspace,
                 "Matrix Market file whose columns span K");
  sw->add_option("--grid", sw_grid, "re0:re1:n[,im0:im1:n]")->required();
  sw->add_option("--target", sw_target,
                 "pick the eigenvalue nearest this point (a+bi)");
  sw->add_option("--epsilon", sw_epsilon,
                 "perturbation for the default example subspace");
  add_common(sw, sw_opts);

  int cp_count = 1000;
  Index cp_nmax = 12, cp_mmax = 5;
  std::uint64_t cp_seed = 42;
  auto* cp = app.add_subcommand(
      "campaign", "random-instance inequality campaign");
  cp->add_option("--count", cp_count, "number of instances")
      ->check(CLI::NonNegativeNumber);
  cp->add_option("--nmax", cp_nmax, "largest matrix order (<= 16)");
  cp->add_option("--mmax", cp_mmax, "largest subspace dimension");
  cp->add_option("--seed", cp_seed, "RNG seed");
  add_common(cp, cp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ex->parsed()) {
      std::optional<double> eps;
      if (ex_eps->count() > 0) eps = ex_epsilon;
      BoundReport rep = example1(eps, ex_opts.thresholds);
      write_output(ex_opts.format == "json" ? report_to_json(rep)
                                            : report_to_csv(rep),
                   ex_opts.out);
    } else if (bd->parsed()) {
      Matrix A = read_matrix_market(bd_matrix);
      Matrix Vraw = read_matrix_market(bd_subspace);
      const Complex tau = parse_complex(bd_tau);
      OrthonormalBasis V = orthonormalize(Vraw);
      auto [lambda, x] = nearest_eigenpair(A, tau);
      BoundReport rep = full_report(A, tau, lambda, x, V, bd_opts.thresholds);
      write_output(bd_opts.format == "json" ? report_to_json(rep)
                                            : report_to_csv(rep),
                   bd_opts.out);
    } else if (sw->parsed()) {
      Matrix A;
      OrthonormalBasis V;
      Complex lambda;
      Vector x;
      GridSpec grid = parse_grid(sw_grid);
      if (sw_matrix.empty()) {
        Instance inst = example1_instance(sw_epsilon);
        A = inst.A;
        V = inst.V;
        lambda = inst.lambda;
        x = inst.x;
      } else {
        if (sw_subspace.empty())
          throw ParseError("--subspace is required with --matrix", 0);
        A = read_matrix_market(sw_matrix);
        V = orthonormalize(read_matrix_market(sw_subspace));
        const Complex target =
            sw_target.empty()
                ? Complex(0.5 * (grid.re0 + grid.re1),
                          0.5 * (grid.im0 + grid.im1))
                : parse_complex(sw_target);
        std::tie(lambda, x) = nearest_eigenpair(A, target);
      }
      auto records = tau_sweep(A, lambda, x, V, grid, sw_opts.thresholds);
      write_output(sw_opts.format == "json" ? sweep_to_json(records)
                                            : sweep_to_csv(records),
                   sw_opts.out);
    } else if (cp->parsed()) {
      CampaignSummary summary = random_campaign(cp_count, cp_nmax, cp_mmax,
                                                cp_seed, cp_opts.thresholds);
      write_output(cp_opts.format == "json" ? campaign_to_json(summary)
                                            : campaign_to_csv(summary),
                   cp_opts.out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyGrid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace hrr

#include "vnlw/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace vnlw {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows(std::ofstream& out, const Domain& domain,
                const Eigen::MatrixXcd& values, bool closed) {
  const int count = static_cast<int>(values.rows());
  auto coord = [&](int idx) {
    return closed ? closed_coord(domain, idx) : interior_coord(domain, idx);
  };
  for (int a = 0; a < count; ++a) {
    const auto xa = coord(a);
    for (int b = 0; b < count; ++b) {
      const auto yb = coord(b);
      if (domain.dim == 1) {
        out << fmt17(xa[0]) << ',' << fmt17(yb[0]);
      } else {
        out << fmt17(xa[0]) << ',' << fmt17(xa[1]) << ',' << fmt17(yb[0]) << ','
            << fmt17(yb[1]);
      }
      out << ',' << fmt17(values(a, b).real() + 0.0)  // normalize -0
          << ',' << fmt17(values(a, b).imag() + 0.0) << '\n';
    }
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const BipartiteField& f) {
  auto out = open_out(path);
  out << (f.domain.dim == 1 ? "x,y,re,im" : "x1,x2,y1,y2,re,im") << '\n';
  write_rows(out, f.domain, f.values, false);
}

void write_field_csv(const std::filesystem::path& path, const ClosedField& f) {
  auto out = open_out(path);
  out << (f.domain.dim == 1 ? "x,y,re,im" : "x1,x2,y1,y2,re,im") << '\n';
  write_rows(out, f.domain, f.values, true);
}

LoadedField read_field_csv(const std::filesystem::path& path, const Domain& domain) {
  domain.validate();
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  const std::string expected_header =
      domain.dim == 1 ? "x,y,re,im" : "x1,x2,y1,y2,re,im";
  // tolerate trailing CR from foreign writers
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw ParseError(path.string() + ": expected header '" + expected_header +
                     "', got '" + line + "'");

  const int ncoord = domain.dim == 1 ? 2 : 4;
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        fields.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) +
                         ": bad number '" + tok + "'");
      }
    }
    if (static_cast<int>(fields.size()) != ncoord + 2)
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected " + std::to_string(ncoord + 2) + " fields");
    rows.push_back(std::move(fields));
  }

  const long mi = domain.interior_points();
  const long ci = domain.closed_points();
  const long n = static_cast<long>(rows.size());
  bool closed;
  if (n == mi * mi)
    closed = false;
  else if (n == ci * ci)
    closed = true;
  else
    throw ValidationError(path.string() + ": " + std::to_string(n) +
                          " rows match neither the interior (" +
                          std::to_string(mi * mi) + ") nor the closed (" +
                          std::to_string(ci * ci) + ") grid of the requested domain");

  const int count = closed ? static_cast<int>(ci) : static_cast<int>(mi);
  auto coord = [&](int idx) {
    return closed ? closed_coord(domain, idx) : interior_coord(domain, idx);
  };
  const double ctol = 1e-9 * domain.axis.spacing();
  Eigen::MatrixXcd values(count, count);
  for (int a = 0; a < count; ++a) {
    const auto xa = coord(a);
    for (int b = 0; b < count; ++b) {
      const auto yb = coord(b);
      const auto& row = rows[static_cast<std::size_t>(a) * count + b];
      const double want[4] = {xa[0], xa[1], yb[0], yb[1]};
      for (int k = 0; k < ncoord; ++k) {
        const double got = row[k];
        const double ref = domain.dim == 1 ? (k == 0 ? xa[0] : yb[0]) : want[k];
        if (std::abs(got - ref) > ctol)
          throw ValidationError(path.string() + ": node coordinates do not match the grid (row " +
                                std::to_string(static_cast<long>(a) * count + b + 2) + ")");
      }
      values(a, b) = Complex(row[ncoord], row[ncoord + 1]);
    }
  }

  if (closed) return ClosedField{domain, std::move(values)};
  return BipartiteField{domain, std::move(values)};
}

void write_norms_csv(const std::filesystem::path& path,
                     const std::vector<double>& times,
                     const std::vector<double>& norms) {
  auto out = open_out(path);
  out << "t,norm2\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    out << fmt17(times[i]) << ',' << fmt17(norms[i] * norms[i]) << '\n';
}

}  // namespace vnlw

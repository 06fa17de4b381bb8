#include "vvmhd/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vvmhd/fft.hpp"
#include "vvmhd/operators.hpp"

namespace vvmhd {
namespace {

constexpr char checkpoint_magic[4] = {'V', 'V', 'V', '1'};

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17e", *v);
  return buf;
}

std::optional<double> parse_cell(const std::string& s, int line) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("csv line " + std::to_string(line) +
                             ": bad number '" + s + "'");
  }
  if (pos != s.size())
    throw std::runtime_error("csv line " + std::to_string(line) +
                             ": trailing characters in '" + s + "'");
  return v;
}

void write_raw(std::ostream& out, const void* p, std::size_t bytes) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void read_raw(std::istream& in, void* p, std::size_t bytes) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (in.gcount() != static_cast<std::streamsize>(bytes))
    throw std::runtime_error("checkpoint: truncated file");
}

void write_field(std::ostream& out, const SpectralVectorField& f) {
  const long count = 3L * f.grid().size();
  const std::complex<double>* p = f.raw().data();
  for (long i = 0; i < count; ++i) {
    const double re = p[i].real(), im = p[i].imag();
    write_raw(out, &re, sizeof re);
    write_raw(out, &im, sizeof im);
  }
}

void read_field(std::istream& in, SpectralVectorField& f) {
  const long count = 3L * f.grid().size();
  std::complex<double>* p = f.raw().data();
  for (long i = 0; i < count; ++i) {
    double re = 0.0, im = 0.0;
    read_raw(in, &re, sizeof re);
    read_raw(in, &im, sizeof im);
    p[i] = {re, im};
  }
}

double hermitian_residual(const SpectralVectorField& f) {
  const GridSpec& g = f.grid();
  double worst = 0.0, scale = 0.0;
  for (int c = 0; c < 3; ++c) {
    const std::complex<double>* p = f.component(c);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
          const long idx = g.index(i, j, k);
          const long pidx =
              g.index((g.n - i) % g.n, (g.n - j) % g.n, (g.n - k) % g.n);
          scale = std::max(scale, std::abs(p[idx]));
          worst = std::max(worst, std::abs(p[idx] - std::conj(p[pidx])));
        }
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

void check_field_invariants(const SpectralVectorField& f, const char* name) {
  const std::complex<double>* p = f.raw().data();
  const long count = 3L * f.grid().size();
  for (long i = 0; i < count; ++i)
    if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
      throw std::runtime_error(
          std::string("checkpoint: invariant violation: non-finite mode in ") +
          name);
  if (hermitian_residual(f) > 1e-12)
    throw std::runtime_error(
        std::string("checkpoint: invariant violation: field ") + name +
        " is not Hermitian-symmetric");
  if (solenoidality_residual(f) > rhs_solenoidality_tolerance)
    throw std::runtime_error(
        std::string("checkpoint: invariant violation: field ") + name +
        " is not solenoidal");
}

struct Header {
  std::uint32_t n = 0;
  double nu = 0.0, eta = 0.0, alpha = 0.0, t = 0.0;
  std::uint8_t tag = 0;
};

void write_header(std::ostream& out, const Header& h) {
  write_raw(out, checkpoint_magic, sizeof checkpoint_magic);
  write_raw(out, &h.n, sizeof h.n);
  write_raw(out, &h.nu, sizeof h.nu);
  write_raw(out, &h.eta, sizeof h.eta);
  write_raw(out, &h.alpha, sizeof h.alpha);
  write_raw(out, &h.t, sizeof h.t);
  write_raw(out, &h.tag, sizeof h.tag);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("write_diagnostics_csv: no records");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << diagnostics_csv_header << '\n';
  char tbuf[32];
  for (const DiagnosticRecord& r : records) {
    std::snprintf(tbuf, sizeof(tbuf), "%.17e", r.t);
    out << tbuf << ',' << cell(r.u_l2) << ',' << cell(r.u_h1) << ','
        << cell(r.w_l2) << ',' << cell(r.w_h1) << ',' << cell(r.b_l2) << ','
        << cell(r.b_h1) << ',' << cell(r.energy_lhs) << ','
        << cell(r.dissipation_integral) << ',' << cell(r.energy_residual)
        << ',' << cell(r.xi_l2) << ',' << cell(r.zeta_l2) << ','
        << cell(r.q_l2) << ',' << cell(r.beta_l2) << ',' << cell(r.mu_l2)
        << ',' << cell(r.alpha_grad_u) << ','
        << cell(r.alpha_grad_u_running_sup) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<DiagnosticRecord> read_diagnostics_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: empty file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != diagnostics_csv_header)
    throw std::runtime_error("csv: unexpected header in '" + path + "'");

  std::vector<DiagnosticRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 17)
      throw std::runtime_error("csv line " + std::to_string(lineno) +
                               ": expected 17 cells, got " +
                               std::to_string(cells.size()));
    DiagnosticRecord r;
    const auto t = parse_cell(cells[0], lineno);
    if (!t)
      throw std::runtime_error("csv line " + std::to_string(lineno) +
                               ": missing t");
    r.t = *t;
    r.u_l2 = parse_cell(cells[1], lineno);
    r.u_h1 = parse_cell(cells[2], lineno);
    r.w_l2 = parse_cell(cells[3], lineno);
    r.w_h1 = parse_cell(cells[4], lineno);
    r.b_l2 = parse_cell(cells[5], lineno);
    r.b_h1 = parse_cell(cells[6], lineno);
    r.energy_lhs = parse_cell(cells[7], lineno);
    r.dissipation_integral = parse_cell(cells[8], lineno);
    r.energy_residual = parse_cell(cells[9], lineno);
    r.xi_l2 = parse_cell(cells[10], lineno);
    r.zeta_l2 = parse_cell(cells[11], lineno);
    r.q_l2 = parse_cell(cells[12], lineno);
    r.beta_l2 = parse_cell(cells[13], lineno);
    r.mu_l2 = parse_cell(cells[14], lineno);
    r.alpha_grad_u = parse_cell(cells[15], lineno);
    r.alpha_grad_u_running_sup = parse_cell(cells[16], lineno);
    records.push_back(r);
  }
  return records;
}

void save_checkpoint(const std::string& path, const MHDState& s,
                     const PhysParams& params) {
  std::ofstream out = open_out(path);
  Header h;
  h.n = static_cast<std::uint32_t>(s.U.grid().n);
  h.nu = params.nu;
  h.eta = params.eta;
  h.alpha = params.alpha;
  h.t = s.t;
  h.tag = 0;
  write_header(out, h);
  write_field(out, s.U);
  write_field(out, s.B);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void save_checkpoint(const std::string& path, const VVVState& s,
                     const PhysParams& params) {
  std::ofstream out = open_out(path);
  Header h;
  h.n = static_cast<std::uint32_t>(s.u.grid().n);
  h.nu = params.nu;
  h.eta = params.eta;
  h.alpha = params.alpha;
  h.t = s.t;
  h.tag = 1;
  write_header(out, h);
  write_field(out, s.u);
  write_field(out, s.w);
  write_field(out, s.b);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  char magic[4] = {};
  in.read(magic, sizeof magic);
  if (in.gcount() != sizeof magic ||
      std::memcmp(magic, checkpoint_magic, sizeof magic) != 0)
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");

  Header h;
  read_raw(in, &h.n, sizeof h.n);
  read_raw(in, &h.nu, sizeof h.nu);
  read_raw(in, &h.eta, sizeof h.eta);
  read_raw(in, &h.alpha, sizeof h.alpha);
  read_raw(in, &h.t, sizeof h.t);
  read_raw(in, &h.tag, sizeof h.tag);

  if (h.tag > 1)
    throw std::runtime_error("checkpoint: invariant violation: unknown system tag " +
                             std::to_string(int(h.tag)));
  if (!std::isfinite(h.t))
    throw std::runtime_error("checkpoint: invariant violation: non-finite t");

  GridSpec grid = [&] {
    try {
      return GridSpec(static_cast<int>(h.n));
    } catch (const std::exception& e) {
      throw std::runtime_error(
          std::string("checkpoint: invariant violation: ") + e.what());
    }
  }();
  PhysParams params = [&] {
    try {
      return PhysParams(h.nu, h.eta, h.alpha);
    } catch (const std::exception& e) {
      throw std::runtime_error(
          std::string("checkpoint: invariant violation: ") + e.what());
    }
  }();

  if (h.tag == 0) {
    MHDState s(grid);
    s.t = h.t;
    read_field(in, s.U);
    read_field(in, s.B);
    char extra = 0;
    if (in.read(&extra, 1).gcount() != 0)
      throw std::runtime_error("checkpoint: trailing bytes in '" + path + "'");
    check_field_invariants(s.U, "U");
    check_field_invariants(s.B, "B");
    return Checkpoint{params, std::move(s)};
  }
  VVVState s(grid);
  s.t = h.t;
  read_field(in, s.u);
  read_field(in, s.w);
  read_field(in, s.b);
  char extra = 0;
  if (in.read(&extra, 1).gcount() != 0)
    throw std::runtime_error("checkpoint: trailing bytes in '" + path + "'");
  check_field_invariants(s.u, "u");
  check_field_invariants(s.w, "w");
  check_field_invariants(s.b, "b");
  return Checkpoint{params, std::move(s)};
}

}  // namespace vvmhd

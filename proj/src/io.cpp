#include "lp/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lp {

double r12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(fmt_g12(v).c_str(), nullptr);
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double v) {
  static_assert(sizeof(double) == 8);
  os.write(reinterpret_cast<const char*>(&v), 8);  // little-endian hosts
}

double get_f64(std::istream& is) {
  double v;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

void write_lpf1_body(const std::string& path, const detail::FieldData& f,
                     std::uint8_t domain, const json& provenance) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.write("LPF1", 4);
  put_u32(os, 1);
  put_u32(os, 2);
  put_u32(os, std::uint32_t(f.grid().n));
  put_f64(os, f.grid().period);
  put_u32(os, std::uint32_t(f.ncomp()));
  os.put(char(domain));
  for (const cplx& v : f.raw()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  if (!os) throw std::runtime_error("write failed: " + path);

  json meta;
  meta["format"] = "LPF1";
  meta["version"] = 1;
  meta["domain"] = domain == 0 ? "spectral" : "real";
  meta["n"] = f.grid().n;
  meta["period"] = f.grid().period;
  meta["ncomp"] = f.ncomp();
  meta["code_version"] = kCodeVersion;
  meta["provenance"] = provenance;
  write_text(path + ".meta.json", meta.dump(2) + "\n");
}

struct Lpf1Header {
  int n = 0;
  double period = 0;
  int ncomp = 0;
  std::uint8_t domain = 0;
};

Lpf1Header read_header(std::istream& is, const std::string& path) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "LPF1", 4) != 0)
    throw std::runtime_error(path + ": not an LPF1 file");
  if (get_u32(is) != 1) throw std::runtime_error(path + ": unknown version");
  if (get_u32(is) != 2) throw std::runtime_error(path + ": dimension != 2");
  Lpf1Header h;
  h.n = int(get_u32(is));
  h.period = get_f64(is);
  h.ncomp = int(get_u32(is));
  h.domain = std::uint8_t(is.get());
  return h;
}

void read_body(std::istream& is, detail::FieldData& f,
               const std::string& path) {
  for (cplx& v : f.raw()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = cplx(re, im);
  }
  if (!is) throw std::runtime_error(path + ": truncated payload");
}

}  // namespace

void write_lpf1(const std::string& path, const SpectralField& f,
                const json& provenance) {
  write_lpf1_body(path, f, 0, provenance);
}

void write_lpf1(const std::string& path, const RealField& f,
                const json& provenance) {
  write_lpf1_body(path, f, 1, provenance);
}

SpectralField read_lpf1_spectral(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  Lpf1Header h = read_header(is, path);
  if (h.domain != 0) throw std::runtime_error(path + ": not a spectral file");
  SpectralField f(make_grid(h.n, h.period), h.ncomp);
  read_body(is, f, path);
  return f;
}

RealField read_lpf1_real(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  Lpf1Header h = read_header(is, path);
  if (h.domain != 1) throw std::runtime_error(path + ": not a real-space file");
  RealField f(make_grid(h.n, h.period), h.ncomp);
  read_body(is, f, path);
  return f;
}

json to_json(const NormReport& r) {
  json j;
  j["s"] = r12(r.s);
  j["l1"] = r12(r.l1);
  j["linf"] = r12(r.linf);
  j["tl"] = r12(r.tl);
  j["tl_homogeneous"] = r12(r.tl_hom);
  j["besov"] = r12(r.besov);
  j["w1inf"] = r12(r.w1inf);
  j["equivalence_ratio"] = r12(r.equivalence_ratio);
  j["mean_abs"] = r12(r.mean_abs);
  j["j_range"] = {r.j_lo, r.j_hi};
  j["j_min_homogeneous"] = r.j_min_hom;
  j["grid"] = {{"n", r.grid_n}, {"period", r12(r.grid_period)}};
  json shells = json::array();
  for (auto& [jj, v] : r.shell_l1) shells.push_back({{"j", jj}, {"weighted_l1", r12(v)}});
  j["shell_l1"] = shells;
  return j;
}

namespace {
json cvec(const std::array<cplx, 2>& v) {
  return {{"re", {r12(v[0].real()), r12(v[1].real())}},
          {"im", {r12(v[0].imag()), r12(v[1].imag())}},
          {"abs", {r12(std::abs(v[0])), r12(std::abs(v[1]))}}};
}
}  // namespace

json to_json(const MechanismConstants& m) {
  json j;
  j["c0"] = cvec(m.c0);
  j["c1_standard_projector"] = cvec(m.c1_standard);
  j["c1_paper_coefficient_pair"] = cvec(m.c1_paper_pair);
  j["moment_j"] = r12(m.moment_j);
  j["raw_integrals"] = {{"low_direct", {r12(m.raw_low[0]), r12(m.raw_low[1])}},
                        {"shell_pair", {r12(m.raw_pair[0]), r12(m.raw_pair[1])}}};
  json rows = json::array();
  for (const auto& pk : m.per_k) {
    json r;
    r["k"] = pk.k;
    r["drift_reduced"] = cvec(pk.drift_reduced);
    r["drift_raw"] = cvec(pk.drift_raw);
    r["c2_standard"] = cvec(pk.c2_standard);
    r["c2_paper_pair"] = cvec(pk.c2_paper_pair);
    r["route_gap"] = r12(pk.route_gap);
    rows.push_back(r);
  }
  j["per_k"] = rows;
  return j;
}

json to_json(const InteractionTable& t) {
  json j;
  j["k"] = t.k;
  json rows = json::array();
  for (auto& p : t.pairs)
    rows.push_back({{"i", p.i}, {"j", p.j}, {"margin", r12(p.margin)}});
  j["pairs"] = rows;
  return j;
}

json to_json(const PeriodizationReport& p) {
  json rows = json::array();
  for (auto& r : p.rows)
    rows.push_back({{"n", r.n},
                    {"period", r12(r.period)},
                    {"dxi", r12(r.dxi)},
                    {"a3_l1", r12(r.a3_l1)},
                    {"phi0", r12(r.phi0)},
                    {"u0_residual", r12(r.u0_residual)}});
  return {{"rows", rows}, {"residual_monotone", p.residual_monotone}};
}

json sparse_to_json(const SparseSpectrum& s) {
  json arr = json::array();
  for (const SparseEntry& e : s.entries())
    arr.push_back({{"m", {e.m1, e.m2}},
                   {"re", e.value.real()},
                   {"im", e.value.imag()},
                   {"tag", e.tag}});
  return arr;
}

SparseSpectrum sparse_from_json(const json& j, const TorusGrid& g) {
  SparseSpectrum s(g);
  for (const json& e : j)
    s.add(e["m"][0].get<int>(), e["m"][1].get<int>(),
          cplx(e["re"].get<double>(), e["im"].get<double>()),
          e["tag"].get<int>());
  return s;
}

std::string shell_bound_csv(const ShellBoundReport& r) {
  std::ostringstream os;
  os << "k,block_l1,m_k\n";
  for (std::size_t i = 0; i < r.k.size(); ++i)
    os << r.k[i] << ',' << fmt_g12(r.block_l1[i]) << ',' << fmt_g12(r.m_k[i])
       << '\n';
  return os.str();
}

std::string trace_csv(const TraceRecord& t) {
  std::ostringstream os;
  os << "t";
  for (int k : t.config.tracked_k)
    os << ",u1_re_k" << k << ",u1_im_k" << k << ",u2_re_k" << k << ",u2_im_k"
       << k << ",abs_k" << k;
  os << ",weak_n";
  for (double e : t.config.epsilons) os << ",weak_n_eps" << fmt_g12(e);
  os << ",energy,quad_invariant,mean_abs,div_rel\n";
  for (const TraceRow& r : t.rows) {
    os << fmt_g12(r.t);
    for (std::size_t i = 0; i < r.uhat1.size(); ++i) {
      const double mag =
          std::hypot(std::abs(r.uhat1[i]), std::abs(r.uhat2[i]));
      os << ',' << fmt_g12(r.uhat1[i].real()) << ','
         << fmt_g12(r.uhat1[i].imag()) << ',' << fmt_g12(r.uhat2[i].real())
         << ',' << fmt_g12(r.uhat2[i].imag()) << ',' << fmt_g12(mag);
    }
    os << ',' << fmt_g12(r.weak_n);
    for (double v : r.weak_n_mollified) os << ',' << fmt_g12(v);
    os << ',' << fmt_g12(r.energy) << ',' << fmt_g12(r.quad_invariant) << ','
       << fmt_g12(r.mean_abs) << ',' << fmt_g12(r.div_rel) << '\n';
  }
  return os.str();
}

json trace_summary(const TraceRecord& t) {
  json j;
  j["steps"] = t.config.steps;
  j["dt"] = r12(t.config.dt);
  j["t_final"] = r12(t.config.steps * t.config.dt);
  j["s"] = r12(t.config.s);
  j["tracked_k"] = t.config.tracked_k;
  j["energy0"] = r12(t.energy0);
  j["quad_invariant0"] = r12(t.quad_invariant0);
  j["w1inf0"] = r12(t.w1inf0);
  double drift = 0, qdrift = 0, maxdiv = 0, maxmean = 0;
  for (const TraceRow& r : t.rows) {
    drift = std::max(drift, std::abs(r.energy - t.energy0));
    qdrift = std::max(qdrift, std::abs(r.quad_invariant - t.quad_invariant0));
    maxdiv = std::max(maxdiv, r.div_rel);
    maxmean = std::max(maxmean, r.mean_abs);
  }
  j["energy_drift_rel"] = r12(t.energy0 > 0 ? drift / t.energy0 : 0.0);
  j["invariant_drift_rel"] =
      r12(t.quad_invariant0 > 0 ? qdrift / t.quad_invariant0 : 0.0);
  j["max_divergence_rel"] = r12(maxdiv);
  j["max_mean_abs"] = r12(maxmean);
  json diffs = json::array();
  for (const DiffNormRow& d : t.diffs)
    diffs.push_back({{"t1", r12(d.t1)},
                     {"t2", r12(d.t2)},
                     {"f_s", r12(d.f_s)},
                     {"f_s_half", r12(d.f_s_half)},
                     {"f_s_one", r12(d.f_s_one)},
                     {"argmax_shell", d.argmax_shell}});
  j["diff_norms"] = diffs;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace lp

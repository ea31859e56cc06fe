#include "wavecorr/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavecorr {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_field(const std::string& path, const ScalarField2D& f, const std::string& kind) {
  std::ofstream out = open_out(path);
  const GridSpec& g = f.grid;
  out << "format=wavecorr-field-v1\n";
  out << "umin=" << fmt17(g.umin) << " umax=" << fmt17(g.umax) << "\n";
  out << "nu=" << g.nu << "\n";
  out << "vmin=" << fmt17(g.vmin) << " vmax=" << fmt17(g.vmax) << "\n";
  out << "nv=" << g.nv << "\n";
  out << "kind=" << kind << "\n";
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) out << (i ? "," : "") << fmt17(f.at(i, j));
    out << "\n";
  }
}

ScalarField2D read_field(const std::string& path, std::string* kind_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
  std::string line;
  const auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw std::runtime_error("io: truncated field file " + path);
    return line;
  };
  if (next() != "format=wavecorr-field-v1")
    throw std::runtime_error("io: bad field format line in " + path);
  GridSpec g;
  std::string kind;
  if (std::sscanf(next().c_str(), "umin=%lf umax=%lf", &g.umin, &g.umax) != 2)
    throw std::runtime_error("io: bad u-extent line in " + path);
  if (std::sscanf(next().c_str(), "nu=%d", &g.nu) != 1)
    throw std::runtime_error("io: bad nu line in " + path);
  if (std::sscanf(next().c_str(), "vmin=%lf vmax=%lf", &g.vmin, &g.vmax) != 2)
    throw std::runtime_error("io: bad v-extent line in " + path);
  if (std::sscanf(next().c_str(), "nv=%d", &g.nv) != 1)
    throw std::runtime_error("io: bad nv line in " + path);
  {
    const std::string k = next();
    if (k.rfind("kind=", 0) != 0) throw std::runtime_error("io: bad kind line in " + path);
    kind = k.substr(5);
  }
  g.validate();
  ScalarField2D f(g);
  for (int j = 0; j < g.nv; ++j) {
    std::istringstream row(next());
    std::string cell;
    for (int i = 0; i < g.nu; ++i) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("io: short data row in " + path);
      f.at(i, j) = std::stod(cell);
    }
  }
  if (kind_out) *kind_out = kind;
  return f;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
  std::ofstream out = open_out(path);
  out << "t,u,v,udot,vdot,Eu,Ev\n";
  for (const TrajectorySample& s : tr.samples)
    out << fmt17(s.t) << "," << fmt17(s.u) << "," << fmt17(s.v) << "," << fmt17(s.udot)
        << "," << fmt17(s.vdot) << "," << fmt17(s.Eu) << "," << fmt17(s.Ev) << "\n";
}

void write_eigen_csv(const std::string& path, const EigenSystem& sys) {
  std::ofstream out = open_out(path);
  out << "n,parity,E_n,origin_value_or_slope,boundary_decay\n";
  for (const EigenState& st : sys.states())
    out << st.label << "," << (st.parity == Parity::even ? "even" : "odd") << ","
        << fmt17(st.energy) << "," << fmt17(st.origin) << ","
        << fmt17(sys.boundary_decay(st.label)) << "\n";
}

void write_crest_csv(const std::string& path, const CrestReport& rep) {
  std::ofstream out = open_out(path);
  out << "arc,u_classical,v_classical,u_ridge,v_ridge,offset,flagged\n";
  for (const CrestSample& s : rep.samples)
    out << fmt17(s.arc) << "," << fmt17(s.u_c) << "," << fmt17(s.v_c) << "," << fmt17(s.u_r)
        << "," << fmt17(s.v_r) << "," << fmt17(s.offset) << "," << (s.flagged ? 1 : 0)
        << "\n";
  out << "summary," << fmt17(rep.mean_offset) << "," << fmt17(rep.max_offset) << ","
      << fmt17(rep.window) << "," << rep.nu << "x" << rep.nv << "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  std::vector<ManifestEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.file < b.file; });
  std::ofstream out = open_out(path);
  out << "file,bytes,fnv1a64\n";
  char hex[24];
  for (const ManifestEntry& e : sorted) {
    std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)e.checksum);
    out << e.file << "," << e.bytes << "," << hex << "\n";
  }
}

ManifestEntry manifest_entry(const std::string& dir, const std::string& filename) {
  const std::string bytes = read_file_bytes(dir + "/" + filename);
  return ManifestEntry{filename, bytes.size(), fnv1a64(bytes)};
}

}  // namespace wavecorr

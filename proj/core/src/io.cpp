#include "stratsim/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace stratsim {

namespace {

constexpr char kMagic[8] = {'S', 'T', 'R', 'A', 'T', 'S', 'I', 'M'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
void read_pod(std::istream& in, T& value, const char* what) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw io_error(std::string("checkpoint truncated reading ") + what);
}

void write_field(std::ostream& out, const SpectralField& f) {
  out.write(reinterpret_cast<const char*>(f.coeffs().data()),
            static_cast<std::streamsize>(f.coeffs().size() * sizeof(complexd)));
}

SpectralField read_field(std::istream& in, const GridSpec& grid) {
  SpectralField f(grid);
  in.read(reinterpret_cast<char*>(f.coeffs().data()),
          static_cast<std::streamsize>(f.coeffs().size() * sizeof(complexd)));
  if (!in) throw io_error("checkpoint truncated reading field data");
  return f;
}

struct Header {
  std::uint32_t tag = 0;
  std::uint32_t n = 0;
  double length = 0.0;
  double kappa = 0.0;
  double time = 0.0;
};

void write_header(std::ostream& out, const Header& h) {
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, h.tag);
  write_pod(out, h.n);
  write_pod(out, h.length);
  write_pod(out, h.kappa);
  write_pod(out, h.time);
}

Header read_header(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw io_error("checkpoint magic mismatch");
  }
  std::uint32_t version = 0;
  read_pod(in, version, "version");
  if (version != kVersion) {
    throw io_error("checkpoint version mismatch: " + std::to_string(version));
  }
  Header h;
  read_pod(in, h.tag, "model tag");
  read_pod(in, h.n, "grid size");
  read_pod(in, h.length, "box length");
  read_pod(in, h.kappa, "kappa");
  read_pod(in, h.time, "time");
  return h;
}

}  // namespace

void save_checkpoint(const AnyState& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open checkpoint for writing: " + path.string());

  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        Header h;
        h.kappa = s.kappa;
        h.time = s.time;
        if constexpr (std::is_same_v<T, VorticityState>) {
          h.tag = 1;
          h.n = static_cast<std::uint32_t>(s.omega.grid().n);
          h.length = s.omega.grid().length;
          write_header(out, h);
          write_field(out, s.omega);
          write_field(out, s.rho);
        } else if constexpr (std::is_same_v<T, ZState>) {
          h.tag = 2;
          h.n = static_cast<std::uint32_t>(s.z_plus.grid().n);
          h.length = s.z_plus.grid().length;
          write_header(out, h);
          write_field(out, s.z_plus);
          write_field(out, s.z_minus);
        } else {
          h.tag = 3;
          h.n = static_cast<std::uint32_t>(s.theta.grid().n);
          h.length = s.theta.grid().length;
          write_header(out, h);
          write_field(out, s.theta);
        }
      },
      state);
  if (!out) throw io_error("short write to checkpoint: " + path.string());
}

AnyState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open checkpoint: " + path.string());
  const Header h = read_header(in);
  const GridSpec grid = make_grid(static_cast<int>(h.n), h.length);

  AnyState out;
  switch (h.tag) {
    case 1: {
      VorticityState s;
      s.omega = read_field(in, grid);
      s.rho = read_field(in, grid);
      s.kappa = h.kappa;
      s.time = h.time;
      out = std::move(s);
      break;
    }
    case 2: {
      ZState s;
      s.z_plus = read_field(in, grid);
      s.z_minus = read_field(in, grid);
      s.kappa = h.kappa;
      s.time = h.time;
      out = std::move(s);
      break;
    }
    case 3: {
      SqgState s;
      s.theta = read_field(in, grid);
      s.kappa = h.kappa;
      s.time = h.time;
      out = std::move(s);
      break;
    }
    default:
      throw io_error("checkpoint model tag unknown: " + std::to_string(h.tag));
  }
  // trailing bytes mean the file does not match its header
  in.peek();
  if (!in.eof()) throw io_error("checkpoint has trailing bytes: " + path.string());
  return out;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_records_csv(std::span<const SweepRecord> records,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << "model,epsilon,kappa,n_regularity,T_star,stop_reason,seed,grid_n,L,dt\n";
  for (const auto& r : records) {
    out << r.model << ',' << format_double(r.epsilon) << ','
        << format_double(r.kappa) << ',' << format_double(r.n_regularity) << ','
        << format_double(r.t_star) << ',' << r.stop_reason << ',' << r.seed
        << ',' << r.grid_n << ',' << format_double(r.length) << ','
        << format_double(r.dt) << '\n';
  }
}

void write_records_json(std::span<const SweepRecord> records,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << "  {\"model\": \"" << r.model << "\""
        << ", \"epsilon\": " << format_double(r.epsilon)
        << ", \"kappa\": " << format_double(r.kappa)
        << ", \"n_regularity\": " << format_double(r.n_regularity)
        << ", \"T_star\": " << format_double(r.t_star)
        << ", \"stop_reason\": \"" << r.stop_reason << "\""
        << ", \"seed\": " << r.seed << ", \"grid_n\": " << r.grid_n
        << ", \"L\": " << format_double(r.length)
        << ", \"dt\": " << format_double(r.dt) << "}"
        << (i + 1 < records.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

void write_norm_series_csv(std::span<const NormReport> reports,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << "time,sobolev_hn,besov_b1_inf_1,grad_linf,l2_energy,"
         "accumulated_bootstrap,accumulated_blowup\n";
  for (const auto& r : reports) {
    out << format_double(r.time) << ',' << format_double(r.sobolev_hn) << ','
        << format_double(r.besov_b1_inf_1) << ',' << format_double(r.grad_linf)
        << ',' << format_double(r.l2_energy) << ','
        << format_double(r.accumulated_bootstrap) << ','
        << format_double(r.accumulated_blowup) << '\n';
  }
}

void write_plot_script(const std::filesystem::path& path,
                       const std::string& csv_name, const std::string& x_column,
                       std::span<const std::string> y_columns, bool log_log) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << "#!/usr/bin/env python3\n"
      << "import csv\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "rows = list(csv.DictReader(open('" << csv_name << "')))\n"
      << "x = [float(r['" << x_column << "']) for r in rows]\n";
  for (const auto& col : y_columns) {
    out << "plt.plot(x, [float(r['" << col << "']) for r in rows], label='"
        << col << "')\n";
  }
  if (log_log) out << "plt.xscale('log')\nplt.yscale('log')\n";
  out << "plt.xlabel('" << x_column << "')\n"
      << "plt.legend()\n"
      << "plt.tight_layout()\n"
      << "plt.savefig('" << csv_name << ".png', dpi=150)\n"
      << "print('wrote " << csv_name << ".png')\n";
}

}  // namespace stratsim

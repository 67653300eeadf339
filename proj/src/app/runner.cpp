#include "bgkmix/app/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/mixture.hpp"
#include "bgkmix/diagnostics/bounds.hpp"
#include "bgkmix/diagnostics/equilibration.hpp"
#include "bgkmix/diagnostics/state_reports.hpp"
#include "bgkmix/io/checkpoint.hpp"

namespace bgkmix::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kAxes[3] = {"x", "y", "z"};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no inf/nan; store them as strings.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

double from_jnum(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

template <class Seq>
json jarray(const Seq& s) {
  json a = json::array();
  for (double v : s) a.push_back(jnum(v));
  return a;
}

template <class Vec>
Vec from_jarray(const json& j) {
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = from_jnum(j[i]);
  return v;
}

template <std::size_t N>
std::array<double, N> from_jarray2(const json& j) {
  std::array<double, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = from_jnum(j.at(i));
  return a;
}

/// Density-weighted spatial means of one species.
struct SpeciesMeans {
  double n = 0.0;
  VelocityVector u;
  double Lambda = 0.0;
  double Theta = 0.0;
  double T = 0.0;
  double T_trans = 0.0;
  double T_rot = 0.0;
};

struct OutputRow {
  std::size_t step = 0;
  double time = 0.0;
  ConservationTotals totals;
  std::array<double, 2> mass_drift{};
  double momentum_drift = 0.0;
  double energy_drift = 0.0;
  double theta_energy_delta = 0.0;
  double min_value = 0.0;
  double entropy = 0.0;
  std::array<SpeciesMeans, 2> means;
  BoundsSample bounds;
};

/// Everything the summary is computed from; carried through checkpoints.
struct Record {
  ConservationTotals reference;
  std::vector<OutputRow> rows;
  BoundsReport bounds;
  double t0 = 0.0;
  double min_step_value = std::numeric_limits<double>::infinity();
  std::size_t failed_steps = 0;
  bool vacuum = false;
};

json totals_json(const ConservationTotals& t) {
  return {{"time", jnum(t.time)},       {"mass", jarray(t.mass)},
          {"momentum", jarray(t.momentum)}, {"momentum_scale", jnum(t.momentum_scale)},
          {"energy", jnum(t.energy)},   {"theta_energy", jnum(t.theta_energy)}};
}

ConservationTotals totals_from(const json& j) {
  ConservationTotals t;
  t.time = from_jnum(j.at("time"));
  t.mass = from_jarray2<2>(j.at("mass"));
  t.momentum = from_jarray<VelocityVector>(j.at("momentum"));
  t.momentum_scale = from_jnum(j.at("momentum_scale"));
  t.energy = from_jnum(j.at("energy"));
  t.theta_energy = from_jnum(j.at("theta_energy"));
  return t;
}

json sample_json(const BoundsSample& s) {
  return {{"time", jnum(s.time)},
          {"min_density", jarray(s.min_density)},
          {"density_bound", jarray(s.density_bound)},
          {"min_temperature", jnum(s.min_temperature)},
          {"temperature_bound", jnum(s.temperature_bound)}};
}

BoundsSample sample_from(const json& j) {
  BoundsSample s;
  s.time = from_jnum(j.at("time"));
  s.min_density = from_jarray2<2>(j.at("min_density"));
  s.density_bound = from_jarray2<2>(j.at("density_bound"));
  s.min_temperature = from_jnum(j.at("min_temperature"));
  s.temperature_bound = from_jnum(j.at("temperature_bound"));
  return s;
}

json record_json(const Record& r) {
  json rows = json::array();
  for (const OutputRow& o : r.rows) {
    json means = json::array();
    for (const SpeciesMeans& m : o.means)
      means.push_back({{"n", jnum(m.n)},
                       {"u", jarray(m.u)},
                       {"Lambda", jnum(m.Lambda)},
                       {"Theta", jnum(m.Theta)},
                       {"T", jnum(m.T)},
                       {"T_trans", jnum(m.T_trans)},
                       {"T_rot", jnum(m.T_rot)}});
    rows.push_back({{"step", o.step},
                    {"time", jnum(o.time)},
                    {"totals", totals_json(o.totals)},
                    {"mass_drift", jarray(o.mass_drift)},
                    {"momentum_drift", jnum(o.momentum_drift)},
                    {"energy_drift", jnum(o.energy_drift)},
                    {"theta_energy_delta", jnum(o.theta_energy_delta)},
                    {"min_value", jnum(o.min_value)},
                    {"entropy", jnum(o.entropy)},
                    {"means", means},
                    {"bounds", sample_json(o.bounds)}});
  }
  json samples = json::array();
  for (const BoundsSample& s : r.bounds.samples) samples.push_back(sample_json(s));
  return {{"reference", totals_json(r.reference)},
          {"rows", rows},
          {"bounds",
           {{"C0", jarray(r.bounds.C0)},
            {"decay_rate", jarray(r.bounds.decay_rate)},
            {"temperature_constant", jnum(r.bounds.temperature_constant)},
            {"samples", samples},
            {"density_pass", r.bounds.density_pass},
            {"temperature_pass", r.bounds.temperature_pass},
            {"density_margin", jarray(r.bounds.density_margin)},
            {"temperature_margin", jnum(r.bounds.temperature_margin)}}},
          {"t0", jnum(r.t0)},
          {"min_step_value", jnum(r.min_step_value)},
          {"failed_steps", r.failed_steps},
          {"vacuum", r.vacuum}};
}

Record record_from(const json& j) {
  Record r;
  r.reference = totals_from(j.at("reference"));
  for (const json& o : j.at("rows")) {
    OutputRow row;
    row.step = o.at("step").get<std::size_t>();
    row.time = from_jnum(o.at("time"));
    row.totals = totals_from(o.at("totals"));
    row.mass_drift = from_jarray2<2>(o.at("mass_drift"));
    row.momentum_drift = from_jnum(o.at("momentum_drift"));
    row.energy_drift = from_jnum(o.at("energy_drift"));
    row.theta_energy_delta = from_jnum(o.at("theta_energy_delta"));
    row.min_value = from_jnum(o.at("min_value"));
    row.entropy = from_jnum(o.at("entropy"));
    for (std::size_t k = 0; k < 2; ++k) {
      const json& m = o.at("means").at(k);
      SpeciesMeans& s = row.means[k];
      s.n = from_jnum(m.at("n"));
      s.u = from_jarray<VelocityVector>(m.at("u"));
      s.Lambda = from_jnum(m.at("Lambda"));
      s.Theta = from_jnum(m.at("Theta"));
      s.T = from_jnum(m.at("T"));
      s.T_trans = from_jnum(m.at("T_trans"));
      s.T_rot = from_jnum(m.at("T_rot"));
    }
    row.bounds = sample_from(o.at("bounds"));
    r.rows.push_back(std::move(row));
  }
  const json& b = j.at("bounds");
  r.bounds.C0 = from_jarray2<2>(b.at("C0"));
  r.bounds.decay_rate = from_jarray2<2>(b.at("decay_rate"));
  r.bounds.temperature_constant = from_jnum(b.at("temperature_constant"));
  for (const json& s : b.at("samples")) r.bounds.samples.push_back(sample_from(s));
  r.bounds.density_pass = b.at("density_pass").get<bool>();
  r.bounds.temperature_pass = b.at("temperature_pass").get<bool>();
  r.bounds.density_margin = from_jarray2<2>(b.at("density_margin"));
  r.bounds.temperature_margin = from_jnum(b.at("temperature_margin"));
  r.t0 = from_jnum(j.at("t0"));
  r.min_step_value = from_jnum(j.at("min_step_value"));
  r.failed_steps = j.at("failed_steps").get<std::size_t>();
  r.vacuum = j.at("vacuum").get<bool>();
  return r;
}

/// CSV file whose first column is the step counter. Opening with a cut step
/// keeps existing rows up to that step and appends after them.
class CsvFile {
 public:
  void open(const fs::path& path, const std::vector<std::string>& header, std::ptrdiff_t keep_through = -1) {
    std::vector<std::string> kept;
    if (keep_through >= 0 && fs::exists(path)) {
      std::ifstream in(path);
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        if (first) {
          first = false;
          continue;
        }
        const auto step = std::stoll(line.substr(0, line.find(',')));
        if (step <= keep_through) kept.push_back(line);
      }
    }
    out_.open(path, std::ios::trunc);
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
    path_ = path;
    write(header);
    for (const std::string& line : kept) out_ << line << '\n';
  }

  void write(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << '\n';
    if (!out_) throw IoError("write failed on '" + path_.string() + "'");
  }

  void close() {
    out_.close();
    if (out_.fail()) throw IoError("cannot finish '" + path_.string() + "'");
  }

 private:
  std::ofstream out_;
  fs::path path_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

std::string plot_script() {
  return R"(# gnuplot script; run from the output directory: gnuplot plot.gp
set datafile separator ','
set terminal pngcairo size 1000,700
set key outside right
set xlabel 'time'

set output 'conservation.png'
set title 'relative conservation drift'
set logscale y
set format y '%.0e'
plot 'timeseries.csv' using 'time':(abs(column('mass_drift_1'))+1e-300) with linespoints title 'mass 1', \
     '' using 'time':(abs(column('mass_drift_2'))+1e-300) with linespoints title 'mass 2', \
     '' using 'time':(abs(column('momentum_drift'))+1e-300) with linespoints title 'momentum', \
     '' using 'time':(abs(column('energy_drift'))+1e-300) with linespoints title 'energy'
unset logscale y
set format y '%g'

set output 'equilibration.png'
set title 'mean temperatures'
plot for [k=1:2] 'timeseries.csv' using 'time':sprintf('Lambda_%d', k) with lines title sprintf('Lambda_%d', k), \
     for [k=1:2] '' using 'time':sprintf('Theta_%d', k) with lines dashtype 2 title sprintf('Theta_%d', k), \
     for [k=1:2] '' using 'time':sprintf('T_%d', k) with lines dashtype 3 title sprintf('T_%d', k)

set output 'entropy.png'
set title 'H = sum f ln f'
plot 'timeseries.csv' using 'time':'entropy' with linespoints title 'H'

set output 'bounds.png'
set title 'density lower bound'
plot for [k=1:2] 'timeseries.csv' using 'time':sprintf('min_density_%d', k) with lines title sprintf('min n_%d', k), \
     for [k=1:2] '' using 'time':sprintf('density_bound_%d', k) with lines dashtype 2 title sprintf('C0 exp(-rate t), species %d', k)
)";
}

class Runner {
 public:
  Runner(RunConfig config, fs::path out, const RunOverrides& overrides)
      : cfg_(std::move(config)), out_(std::move(out)), log_(overrides.log) {
    if (overrides.threads > 0) cfg_.threads = overrides.threads;
    cfg_.solver.threads = cfg_.threads;
    cfg_.picard.threads = cfg_.threads;
    model_ = cfg_.model;
    grid_ = build_grid(cfg_.grid, model_.species);
    std::error_code ec;
    fs::create_directories(out_ / "checkpoints", ec);
    if (ec) throw IoError("cannot create output directory '" + out_.string() + "': " + ec.message());
  }

  RunResult fresh() {
    state_ = make_initial_state(cfg_.initial, model_, grid_, cfg_.threads);
    record_.reference = conservation_totals(state_, model_, grid_, cfg_.threads);
    record_.t0 = state_.time;
    bounds_ = std::make_unique<BoundsMonitor>(model_, grid_);
    open_outputs(-1);
    observe();
    return cfg_.integrator == Integrator::picard ? picard() : splitting();
  }

  RunResult resumed(const Checkpoint& cp, const json& meta) {
    if (cp.grid_hash != grid_.hash()) throw ConfigError("checkpoint grid does not match its stored config");
    if (cfg_.integrator != Integrator::splitting) throw ConfigError("only splitting runs can be resumed");
    state_ = cp.state;
    record_ = record_from(meta.at("record"));
    bounds_ = std::make_unique<BoundsMonitor>(model_, grid_, record_.bounds, record_.t0);
    open_outputs(static_cast<std::ptrdiff_t>(state_.steps));
    for (const OutputRow& row : record_.rows) write_timeseries(row);
    return splitting();
  }

 private:
  std::size_t total_steps() const {
    const double ratio = cfg_.time.t_final / cfg_.time.dt;
    const auto n = static_cast<std::size_t>(std::llround(ratio));
    if (n == 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
      throw ConfigError("time.t_final must be a whole number of time.dt steps");
    return n;
  }

  RunResult splitting() {
    const std::size_t n = total_steps();
    try {
      while (state_.steps < n) {
        const StepReport rep = step(state_, model_, grid_, cfg_.time.dt, cfg_.solver);
        record_.min_step_value = std::min(record_.min_step_value, rep.min_value);
        if (!rep.positive) ++record_.failed_steps;
        record_.vacuum = record_.vacuum || rep.vacuum;
        const std::size_t s = state_.steps;
        if (s % static_cast<std::size_t>(cfg_.time.output_every) == 0 || s == n) observe();
        if (cfg_.time.checkpoint_every > 0 && s % static_cast<std::size_t>(cfg_.time.checkpoint_every) == 0 && s < n)
          checkpoint(out_ / "checkpoints" / step_name(s));
        if (log_) *log_ << "step " << s << "/" << n << "  t=" << num(state_.time) << '\n';
      }
    } catch (const NumericalError& e) {
      fail(e);
    }
    return finish();
  }

  RunResult picard() {
    try {
      const PicardResult r = picard_solve(state_, model_, grid_, cfg_.time.t_final, cfg_.picard);
      state_ = r.state;
      CsvFile csv;
      std::vector<std::string> header{"iteration", "distance", "nq_f_1", "nq_f_2", "nq_m_1",
                                      "nq_m_2",    "alpha_min", "alpha_max", "min_f", "min_m"};
      csv.open(out_ / "picard.csv", header);
      for (const PicardTrace& t : r.trace) {
        csv.write({std::to_string(t.iteration), num(t.distance), num(t.nq_f[0]), num(t.nq_f[1]), num(t.nq_m[0]),
                   num(t.nq_m[1]), num(t.alpha_min), num(t.alpha_max), num(t.min_f), num(t.min_m)});
        record_.min_step_value = std::min(record_.min_step_value, t.min_f);
        if (model_.variant == ModelVariant::b) record_.min_step_value = std::min(record_.min_step_value, t.min_m);
      }
      csv.close();
      json p = {{"iterations", r.trace.size()},
                {"final_distance", r.trace.empty() ? jnum(0.0) : jnum(r.trace.back().distance)},
                {"non_contraction", r.non_contraction},
                {"warning", r.warning},
                {"q", jnum(r.q)},
                {"A0", jnum(r.A0)},
                {"C_q", jnum(r.C_q)},
                {"envelope_respected", r.envelope_respected},
                {"envelope_margin", jnum(r.envelope_margin)}};
      picard_summary_ = p;
      if (record_.min_step_value < 0.0) ++record_.failed_steps;
      observe();
    } catch (const NumericalError& e) {
      fail(e);
    }
    return finish();
  }

  static std::string step_name(std::size_t s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "step_%08zu.bin", s);
    return buf;
  }

  [[noreturn]] void fail(const NumericalError& e) {
    std::ostringstream msg;
    msg << "numerical failure at t=" << num(state_.time) << " after step " << state_.steps << ": " << e.what();
    json s = summary();
    s["status"] = "numerical_error";
    s["error"] = msg.str();
    write_text(out_ / "summary.json", s.dump(2) + "\n");
    throw NumericalError(msg.str());
  }

  void checkpoint(const fs::path& path) {
    const json meta = {{"config", cfg_.source}, {"record", record_json(record_)}};
    save_checkpoint(path, state_, grid_, meta.dump());
  }

  RunResult finish() {
    checkpoint(out_ / "checkpoints" / "final.bin");
    for (CsvFile& f : moment_csv_) f.close();
    exchange_csv_.close();
    timeseries_csv_.close();
    const std::string text = summary().dump(2) + "\n";
    write_text(out_ / "summary.json", text);
    write_text(out_ / "plot.gp", plot_script());
    return {out_, state_.steps, state_.time, text};
  }

  std::vector<std::string> timeseries_header() const {
    std::vector<std::string> h{"step", "time", "mass_1", "mass_2"};
    for (int a = 0; a < model_.dim; ++a) h.push_back(std::string("momentum_") + kAxes[a]);
    for (const char* c : {"energy", "theta_energy", "mass_drift_1", "mass_drift_2", "momentum_drift", "energy_drift",
                          "theta_energy_delta", "min_value", "entropy"})
      h.push_back(c);
    for (int k = 1; k <= 2; ++k) {
      const std::string s = "_" + std::to_string(k);
      h.push_back("n" + s);
      for (int a = 0; a < model_.dim; ++a) h.push_back("u" + s + "_" + kAxes[a]);
      for (const char* c : {"Lambda", "Theta", "T", "T_trans", "T_rot"}) h.push_back(c + s);
    }
    for (const char* c :
         {"min_density_1", "density_bound_1", "min_density_2", "density_bound_2", "min_temperature", "temperature_bound"})
      h.push_back(c);
    return h;
  }

  std::vector<std::string> moments_header(int k) const {
    std::vector<std::string> h{"step", "time", "ix"};
    for (int a = 0; a < model_.dim; ++a) h.push_back(kAxes[a]);
    h.push_back("n");
    for (int a = 0; a < model_.dim; ++a) h.push_back(std::string("u_") + kAxes[a]);
    for (int b = 1; b <= model_[k].internal_dof; ++b) h.push_back("eta_bar_" + std::to_string(b));
    for (const char* c : {"T_trans", "T_rot", "Lambda", "Theta", "T"}) h.push_back(c);
    for (int a = 0; a < model_.dim; ++a)
      for (int b = a; b < model_.dim; ++b) h.push_back(std::string("P_") + kAxes[a] + kAxes[b]);
    return h;
  }

  std::vector<std::string> exchange_header() const {
    std::vector<std::string> h{"step", "time", "ix", "n12", "n21"};
    for (const char* v : {"u12_", "u21_"})
      for (int a = 0; a < model_.dim; ++a) h.push_back(v + std::string(kAxes[a]));
    for (int b = 1; b <= model_[0].internal_dof; ++b) h.push_back("eta12_" + std::to_string(b));
    for (int b = 1; b <= model_[1].internal_dof; ++b) h.push_back("eta21_" + std::to_string(b));
    for (const char* c : {"Lambda12", "Theta12", "T12", "Lambda21", "Theta21", "T21"}) h.push_back(c);
    return h;
  }

  void open_outputs(std::ptrdiff_t keep_through) {
    timeseries_csv_.open(out_ / "timeseries.csv", timeseries_header());
    moment_csv_[0].open(out_ / "moments_1.csv", moments_header(0), keep_through);
    moment_csv_[1].open(out_ / "moments_2.csv", moments_header(1), keep_through);
    exchange_csv_.open(out_ / "exchange.csv", exchange_header(), keep_through);
  }

  void write_timeseries(const OutputRow& o) {
    std::vector<std::string> r{std::to_string(o.step), num(o.time), num(o.totals.mass[0]), num(o.totals.mass[1])};
    for (double p : o.totals.momentum) r.push_back(num(p));
    for (double v : {o.totals.energy, o.totals.theta_energy, o.mass_drift[0], o.mass_drift[1], o.momentum_drift,
                     o.energy_drift, o.theta_energy_delta, o.min_value, o.entropy})
      r.push_back(num(v));
    for (const SpeciesMeans& m : o.means) {
      r.push_back(num(m.n));
      for (double u : m.u) r.push_back(num(u));
      for (double v : {m.Lambda, m.Theta, m.T, m.T_trans, m.T_rot}) r.push_back(num(v));
    }
    const BoundsSample& b = o.bounds;
    for (double v : {b.min_density[0], b.density_bound[0], b.min_density[1], b.density_bound[1], b.min_temperature,
                     b.temperature_bound})
      r.push_back(num(v));
    timeseries_csv_.write(r);
  }

  void observe() {
    const int threads = cfg_.threads;
    const auto m = state_moments(state_, model_, grid_, threads);
    const ConservationReport c = conservation_report(state_, model_, grid_, &record_.reference, threads);
    bounds_->observe(state_, threads);
    record_.bounds = bounds_->report();

    OutputRow o;
    o.step = state_.steps;
    o.time = state_.time;
    o.totals = c.totals;
    o.mass_drift = c.mass_drift;
    o.momentum_drift = c.momentum_drift;
    o.energy_drift = c.energy_drift;
    o.theta_energy_delta = c.theta_energy_delta;
    o.min_value = min_state_value(state_);
    o.entropy = entropy_report(state_, grid_).H;
    o.bounds = record_.bounds.samples.back();
    for (std::size_t k = 0; k < 2; ++k) {
      SpeciesMeans& s = o.means[k];
      s.u = VelocityVector(static_cast<std::size_t>(model_.dim), 0.0);
      double mass = 0.0;
      for (const MomentSet& x : m[k]) {
        mass += x.n;
        for (std::size_t a = 0; a < s.u.size(); ++a) s.u[a] += x.n * x.u[a];
        s.Lambda += x.n * x.Lambda;
        s.Theta += x.n * x.Theta;
        s.T += x.n * x.T_equil;
        s.T_trans += x.n * x.T_trans;
        s.T_rot += x.n * x.T_rot;
      }
      s.n = mass / static_cast<double>(m[k].size());
      for (double& u : s.u) u /= mass;
      s.Lambda /= mass;
      s.Theta /= mass;
      s.T /= mass;
      s.T_trans /= mass;
      s.T_rot /= mass;
    }
    write_timeseries(o);
    record_.rows.push_back(o);

    const std::string step = std::to_string(state_.steps), time = num(state_.time);
    for (int k = 0; k < 2; ++k)
      for (std::size_t ix = 0; ix < m[static_cast<std::size_t>(k)].size(); ++ix) {
        const MomentSet& x = m[static_cast<std::size_t>(k)][ix];
        std::vector<std::string> r{step, time, std::to_string(ix)};
        for (int a = 0; a < model_.dim; ++a) r.push_back(num(grid_.space.coordinate(ix, a)));
        r.push_back(num(x.n));
        for (double u : x.u) r.push_back(num(u));
        for (double e : x.eta_bar) r.push_back(num(e));
        for (double v : {x.T_trans, x.T_rot, x.Lambda, x.Theta, x.T_equil}) r.push_back(num(v));
        for (int a = 0; a < model_.dim; ++a)
          for (int b = a; b < model_.dim; ++b) r.push_back(num(x.pressure(a, b, model_.dim)));
        moment_csv_[static_cast<std::size_t>(k)].write(r);
      }
    for (std::size_t ix = 0; ix < m[0].size(); ++ix) {
      const ExchangeSet x = exchange_quantities(m[0][ix], m[1][ix], model_.coupling, model_.species, model_.dim);
      std::vector<std::string> r{step, time, std::to_string(ix), num(x.n12), num(x.n21)};
      for (double u : x.u12) r.push_back(num(u));
      for (double u : x.u21) r.push_back(num(u));
      for (double e : x.eta12) r.push_back(num(e));
      for (double e : x.eta21) r.push_back(num(e));
      for (double v : {x.Lambda12, x.Theta12, x.T12, x.Lambda21, x.Theta21, x.T21}) r.push_back(num(v));
      exchange_csv_.write(r);
    }
  }

  json equilibration_summary() const {
    std::vector<HomogeneousSample> history;
    for (const OutputRow& o : record_.rows) {
      HomogeneousSample h;
      h.time = o.time;
      for (std::size_t k = 0; k < 2; ++k) {
        MomentSet& x = h.species[k];
        x.n = o.means[k].n;
        x.u = o.means[k].u;
        x.Lambda = o.means[k].Lambda;
        x.Theta = o.means[k].Theta;
        x.T_equil = o.means[k].T;
      }
      history.push_back(h);
    }
    json out;
    json species = json::array();
    std::array<double, 2> rates{};
    for (std::size_t k = 0; k < 2; ++k) {
      const double gap0 = std::abs(history.front().species[k].Lambda - history.front().species[k].Theta);
      json lag = nullptr;
      if (gap0 > 1e-12)
        for (const HomogeneousSample& h : history)
          if (std::abs(h.species[k].Lambda - h.species[k].Theta) <= 1e-2 * gap0) {
            lag = jnum(h.time - history.front().time);
            break;
          }
      species.push_back({{"Z_r", jnum(model_[static_cast<int>(k)].collision_number)},
                         {"internal_gap_initial", jnum(gap0)},
                         {"internal_gap_final",
                          jnum(std::abs(history.back().species[k].Lambda - history.back().species[k].Theta))},
                         {"theta_lag_time", lag}});
    }
    try {
      const EquilibrationReport r = equilibration_report(history, model_);
      for (std::size_t k = 0; k < 2; ++k) {
        const DecayFit& f = r.fits[k];
        rates[k] = f.trivial ? 0.0 : f.rate;
        species[k]["internal_rate"] = f.trivial ? json(nullptr) : jnum(f.rate);
        species[k]["internal_monotone"] = f.monotone;
        if (r.analytic_rate[k] > 0.0) {
          species[k]["analytic_rate"] = jnum(r.analytic_rate[k]);
          species[k]["rate_error"] = jnum(r.rate_error[k]);
        }
      }
      out["velocity_gap_final"] = jnum(r.final_velocity_gap);
      out["temperature_gap_final"] = jnum(r.final_temperature_gap);
      out["internal_gap_final"] = jnum(r.final_internal_gap);
      out["mean_temperature"] = jnum(r.mean_temperature);
      if (rates[0] > 0.0 && rates[1] > 0.0) out["slowest_internal_species"] = rates[0] < rates[1] ? 1 : 2;
    } catch (const InsufficientDecayError& e) {
      out["fit_error"] = e.what();
    }
    out["species"] = species;
    return out;
  }

  json summary() const {
    json s;
    s["name"] = cfg_.name;
    s["status"] = "ok";
    s["model"] = std::string(to_string(model_.variant));
    s["integrator"] = std::string(to_string(cfg_.integrator));
    s["seed"] = cfg_.seed;
    s["time"] = jnum(state_.time);
    s["steps"] = state_.steps;
    s["dt"] = jnum(cfg_.integrator == Integrator::picard ? cfg_.picard.dt : cfg_.time.dt);
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(grid_.hash()));
    s["grid"] = {{"x_nodes", cfg_.grid.x_nodes},
                 {"velocity_nodes", {grid_[0].velocity_axis.nodes, grid_[1].velocity_axis.nodes}},
                 {"internal_nodes", {grid_[0].internal_axis.nodes, grid_[1].internal_axis.nodes}},
                 {"velocity_max", {jnum(grid_[0].velocity_axis.half_width), jnum(grid_[1].velocity_axis.half_width)}},
                 {"internal_max", {jnum(grid_[0].internal_axis.half_width), jnum(grid_[1].internal_axis.half_width)}},
                 {"truncation_loss", {jnum(grid_[0].truncation_loss), jnum(grid_[1].truncation_loss)}},
                 {"hash", hash}};
    if (!record_.rows.empty()) {
      std::array<double, 2> max_mass{};
      double max_momentum = 0.0, max_energy = 0.0, max_increase = 0.0;
      for (std::size_t i = 0; i < record_.rows.size(); ++i) {
        const OutputRow& o = record_.rows[i];
        for (std::size_t k = 0; k < 2; ++k) max_mass[k] = std::max(max_mass[k], std::abs(o.mass_drift[k]));
        max_momentum = std::max(max_momentum, std::abs(o.momentum_drift));
        max_energy = std::max(max_energy, std::abs(o.energy_drift));
        if (i > 0) max_increase = std::max(max_increase, o.entropy - record_.rows[i - 1].entropy);
      }
      const OutputRow& last = record_.rows.back();
      s["conservation"] = {{"mass_drift", jarray(last.mass_drift)},
                           {"momentum_drift", jnum(last.momentum_drift)},
                           {"energy_drift", jnum(last.energy_drift)},
                           {"theta_energy_delta", jnum(last.theta_energy_delta)},
                           {"max_mass_drift", jarray(max_mass)},
                           {"max_momentum_drift", jnum(max_momentum)},
                           {"max_energy_drift", jnum(max_energy)}};
      const double min_value = std::min(record_.min_step_value, [&] {
        double v = std::numeric_limits<double>::infinity();
        for (const OutputRow& o : record_.rows) v = std::min(v, o.min_value);
        return v;
      }());
      s["positivity"] = {{"pass", record_.failed_steps == 0 && min_value >= 0.0},
                         {"min_value", jnum(min_value)},
                         {"failed_steps", record_.failed_steps},
                         {"vacuum_warning", record_.vacuum}};
      const double H0 = record_.rows.front().entropy;
      s["entropy"] = {{"initial", jnum(H0)},
                      {"final", jnum(last.entropy)},
                      {"max_increase", jnum(max_increase)},
                      {"monotone", max_increase <= 1e-12 * std::max(1.0, std::abs(H0))}};
      const BoundsReport& b = record_.bounds;
      s["bounds"] = {{"C0", jarray(b.C0)},
                     {"decay_rate", jarray(b.decay_rate)},
                     {"density_pass", b.density_pass},
                     {"density_margin", jarray(b.density_margin)},
                     {"temperature_constant", jnum(b.temperature_constant)},
                     {"temperature_pass", b.temperature_pass},
                     {"temperature_margin", jnum(b.temperature_margin)}};
      s["equilibration"] = equilibration_summary();
    }
    if (!picard_summary_.is_null()) s["picard"] = picard_summary_;
    return s;
  }

  RunConfig cfg_;
  fs::path out_;
  std::ostream* log_ = nullptr;
  PhysicalModel model_;
  PhaseSpaceGrid grid_;
  KineticState state_;
  Record record_;
  std::unique_ptr<BoundsMonitor> bounds_;
  CsvFile timeseries_csv_;
  std::array<CsvFile, 2> moment_csv_;
  CsvFile exchange_csv_;
  json picard_summary_;
};

}  // namespace

RunResult run_scenario(const RunConfig& config, const std::filesystem::path& out, const RunOverrides& overrides) {
  Runner runner(config, out, overrides);
  return runner.fresh();
}

std::filesystem::path default_resume_directory(const std::filesystem::path& checkpoint) {
  const fs::path dir = fs::absolute(checkpoint).parent_path();
  return dir.filename() == "checkpoints" ? dir.parent_path() : dir;
}

RunResult resume_scenario(const std::filesystem::path& checkpoint, const std::filesystem::path& out,
                          const RunOverrides& overrides) {
  Checkpoint cp = load_checkpoint(checkpoint);
  json meta;
  try {
    meta = json::parse(cp.metadata);
  } catch (const json::exception&) {
    throw IoError("'" + checkpoint.string() + "' carries no run metadata; it was not written by a run");
  }
  if (!meta.contains("config") || !meta.contains("record"))
    throw IoError("'" + checkpoint.string() + "' carries no run metadata; it was not written by a run");
  RunConfig config = parse_config(meta.at("config").get<std::string>(), checkpoint.string() + " (stored config)");
  Runner runner(std::move(config), out.empty() ? default_resume_directory(checkpoint) : out, overrides);
  try {
    return runner.resumed(cp, meta);
  } catch (const json::exception& e) {
    throw IoError("'" + checkpoint.string() + "' has malformed run metadata: " + e.what());
  }
}

}  // namespace bgkmix::app

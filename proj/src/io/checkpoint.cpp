#include "bgkmix/io/checkpoint.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <vector>

#include "bgkmix/core/errors.hpp"

namespace bgkmix {
namespace {

constexpr std::array<char, 8> kMagic{'B', 'G', 'K', 'M', 'I', 'X', 'C', 'P'};
// Guards against absurd sizes in corrupted files before allocating.
constexpr std::uint64_t kMaxCount = std::uint64_t{1} << 36;

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}
  template <class T>
  void scalar(T v) {
    os_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void doubles(const std::vector<double>& v) {
    scalar<std::uint64_t>(v.size());
    os_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  void text(const std::string& s) {
    scalar<std::uint64_t>(s.size());
    os_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void field(const DistributionField& f) {
    scalar<std::uint64_t>(f.space_size());
    scalar<std::uint64_t>(f.velocity_size());
    scalar<std::uint64_t>(f.internal_size());
    doubles(f.values());
  }

 private:
  std::ostream& os_;
};

class Reader {
 public:
  Reader(std::istream& is, std::string path) : is_(is), path_(std::move(path)) {}
  template <class T>
  T scalar() {
    T v{};
    is_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is_) fail("truncated");
    return v;
  }
  std::uint64_t count() {
    const auto n = scalar<std::uint64_t>();
    if (n > kMaxCount) fail("corrupt size field");
    return n;
  }
  std::vector<double> doubles() {
    std::vector<double> v(count());
    is_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is_) fail("truncated");
    return v;
  }
  std::string text() {
    std::string s(count(), '\0');
    is_.read(s.data(), static_cast<std::streamsize>(s.size()));
    if (!is_) fail("truncated");
    return s;
  }
  DistributionField field() {
    const std::uint64_t nx = count(), nv = count(), ne = count();
    DistributionField f(nx, nv, ne);
    std::vector<double> v = doubles();
    if (v.size() != f.size()) fail("field extents disagree with its data");
    f.values() = std::move(v);
    return f;
  }
  [[noreturn]] void fail(const std::string& why) const { throw IoError("checkpoint " + path_ + ": " + why); }

 private:
  std::istream& is_;
  std::string path_;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const KineticState& state, const PhaseSpaceGrid& grid,
                     const std::string& metadata) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open checkpoint " + path.string() + " for writing");
  Writer w(os);
  os.write(kMagic.data(), kMagic.size());
  w.scalar<std::uint32_t>(kCheckpointVersion);
  w.scalar<std::uint32_t>(state.model == ModelVariant::a ? 0 : 1);
  w.scalar<std::uint64_t>(grid.hash());
  w.scalar<double>(state.time);
  w.scalar<std::uint64_t>(state.steps);
  w.text(metadata);
  for (std::size_t k = 0; k < 2; ++k) {
    w.field(state.f[k]);
    w.doubles(state.theta[k]);
    w.field(state.maxwellian[k]);
  }
  os.flush();
  if (!os) throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint " + path.string());
  Reader r(is, path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) r.fail("not a checkpoint file");
  const auto version = r.scalar<std::uint32_t>();
  if (version != kCheckpointVersion) {
    std::ostringstream os;
    os << "unsupported version " << version << " (expected " << kCheckpointVersion << ")";
    r.fail(os.str());
  }
  Checkpoint c;
  const auto model = r.scalar<std::uint32_t>();
  if (model > 1) r.fail("unknown model tag");
  c.state.model = model == 0 ? ModelVariant::a : ModelVariant::b;
  c.grid_hash = r.scalar<std::uint64_t>();
  c.state.time = r.scalar<double>();
  c.state.steps = r.scalar<std::uint64_t>();
  c.metadata = r.text();
  for (std::size_t k = 0; k < 2; ++k) {
    c.state.f[k] = r.field();
    c.state.theta[k] = r.doubles();
    c.state.maxwellian[k] = r.field();
  }
  if (is.peek() != std::char_traits<char>::eof()) r.fail("trailing bytes");
  return c;
}

Checkpoint load_checkpoint(const std::filesystem::path& path, const PhaseSpaceGrid& grid) {
  Checkpoint c = load_checkpoint(path);
  if (c.grid_hash != grid.hash())
    throw ConfigError("checkpoint " + path.string() + " was written for a different grid");
  return c;
}

}  // namespace bgkmix

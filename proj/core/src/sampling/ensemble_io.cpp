#include "fineq/sampling/ensemble_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "fineq/error.hpp"

namespace fineq::sampling {

namespace {

static_assert(std::endian::native == std::endian::little, "ensemble files assume a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const std::filesystem::path& file) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw DataError(file.string() + ": truncated file");
    return v;
}

nlohmann::json header_of(const Ensemble& e) {
    nlohmann::json h = {{"measure", std::string(to_string(e.tag))},
                        {"grid", e.grid.nodes()},
                        {"dim", e.dim},
                        {"n_paths", e.n_paths},
                        {"has_frames", !e.frames.empty()},
                        {"config", e.config}};
    if (e.diagnostics) {
        h["diagnostics"] = {{"pre_snap_gap", e.diagnostics->pre_snap_gap},
                            {"drift_cap_events", e.diagnostics->drift_cap_events},
                            {"drift_evaluations", e.diagnostics->drift_evaluations}};
    }
    return h;
}

}  // namespace

void write_ensemble(const std::filesystem::path& file, const Ensemble& e) {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError(file.string() + ": cannot open for writing");
    const std::string header = header_of(e).dump();
    os.write(kEnsembleMagic.data(), static_cast<std::streamsize>(kEnsembleMagic.size()));
    put<std::uint32_t>(os, kEnsembleVersion);
    put<std::uint64_t>(os, header.size());
    os.write(header.data(), static_cast<std::streamsize>(header.size()));
    os.write(reinterpret_cast<const char*>(e.data.data()), static_cast<std::streamsize>(e.data.size() * sizeof(double)));
    if (!e.frames.empty()) {
        os.write(reinterpret_cast<const char*>(e.frames.data()),
                 static_cast<std::streamsize>(e.frames.size() * sizeof(double)));
    }
    if (!os) throw DataError(file.string() + ": write failed");
}

Ensemble read_ensemble(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw DataError(file.string() + ": cannot open ensemble file");
    char magic[8];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kEnsembleMagic.data(), sizeof magic) != 0) {
        throw DataError(file.string() + ": not an ensemble file");
    }
    const auto version = get<std::uint32_t>(is, file);
    if (version != kEnsembleVersion) throw DataError(file.string() + ": unsupported ensemble version");
    const auto len = get<std::uint64_t>(is, file);
    if (len > (std::uint64_t{1} << 32)) throw DataError(file.string() + ": implausible header length");
    std::string header(len, '\0');
    if (!is.read(header.data(), static_cast<std::streamsize>(len))) throw DataError(file.string() + ": truncated header");

    Ensemble e;
    try {
        const auto h = nlohmann::json::parse(header);
        e.tag = measure_tag_from(h.at("measure").get<std::string>());
        e.grid = TimeGrid(h.at("grid").get<std::vector<double>>());
        e.dim = h.at("dim").get<int>();
        e.n_paths = h.at("n_paths").get<std::size_t>();
        e.config = h.at("config");
        if (h.contains("diagnostics")) {
            const auto& d = h.at("diagnostics");
            e.diagnostics = BridgeDiagnostics{d.at("pre_snap_gap").get<std::vector<double>>(),
                                              d.at("drift_cap_events").get<std::uint64_t>(),
                                              d.at("drift_evaluations").get<std::uint64_t>()};
        }
        if (h.value("has_frames", false)) e.frames.resize(e.n_paths * e.grid.size() * (e.dim - 1) * e.dim);
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(file.string() + ": bad header: " + ex.what());
    }
    if (e.dim < 1) throw DataError(file.string() + ": bad dimension");
    e.data.resize(e.n_paths * e.stride());
    auto read_block = [&](std::vector<double>& v) {
        if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)))) {
            throw DataError(file.string() + ": truncated data block");
        }
    };
    read_block(e.data);
    if (!e.frames.empty()) read_block(e.frames);
    return e;
}

void write_ensemble_csv(const std::filesystem::path& file, const Ensemble& e) {
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw DataError(file.string() + ": cannot open for writing");
    os << "path,node,t";
    for (int c = 0; c < e.dim; ++c) os << ",x" << c;
    os << '\n' << std::setprecision(17);
    for (std::size_t p = 0; p < e.n_paths; ++p) {
        const PathView v = e.path(p);
        for (std::size_t k = 0; k < v.size(); ++k) {
            os << p << ',' << k << ',' << e.grid[k];
            for (double x : v.point(k)) os << ',' << x;
            os << '\n';
        }
    }
    if (!os) throw DataError(file.string() + ": write failed");
}

}  // namespace fineq::sampling

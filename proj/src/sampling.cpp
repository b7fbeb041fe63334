#include "gslearn/sampling.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace gslearn {

namespace {

// splitmix64 finalizer: a bijective 64-bit mixer with good avalanche.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t counter) {
    // 53-bit mantissa in (0, 1]; never exactly 0, so log() below is safe.
    return (static_cast<double>(counter >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal as a pure function of (seed, stream, row, column) via
// counter-based hashing and the Box-Muller transform.
double counter_normal(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t row, std::uint64_t col) {
    std::uint64_t base =
        mix64(mix64(mix64(seed) ^ stream) ^ (row * 0xd1342543de82ef95ULL + col));
    double u1 = uniform01(base);
    double u2 = uniform01(mix64(base ^ 0x2545f4914f6cdd1dULL));
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643 * u2);
}

} // namespace

SampleBatch heterodyne_sample(const GaussianState& state, long long N,
                              std::uint64_t seed, std::uint64_t stream_id,
                              const Tolerances& tols) {
    if (N < 1)
        throw InvalidRange("sampling", "heterodyne_sample", "N must be >= 1");
    const int n = 2 * state.m;
    if (state.V.rows() != n || state.t.size() != n)
        throw DimensionMismatch("sampling", "heterodyne_sample",
                                "state dimensions inconsistent");
    require_symmetric(state.V, tols.sym_tol, "sampling", "heterodyne_sample");

    Mat sigma = state.V + 0.5 * Mat::Identity(n, n);
    Eigen::LLT<Mat> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw FactorizationFailed("sampling", "heterodyne_sample",
                                  "measurement covariance not positive "
                                  "definite");
    Mat L = llt.matrixL();
    double pivot_tol = 1e-12 * sigma.trace();
    for (int i = 0; i < n; ++i)
        if (L(i, i) * L(i, i) < pivot_tol)
            throw FactorizationFailed("sampling", "heterodyne_sample",
                                      "near-singular pivot in factorization");

    SampleBatch batch;
    batch.m = state.m;
    batch.N = N;
    batch.seed = seed;
    batch.stream_id = stream_id;
    batch.data = Mat(N, n);
    Vec z(n);
    for (long long r = 0; r < N; ++r) {
        for (int c = 0; c < n; ++c)
            z(c) = counter_normal(seed, stream_id,
                                  static_cast<std::uint64_t>(r),
                                  static_cast<std::uint64_t>(c));
        batch.data.row(r) = (state.t + L * z).transpose();
    }
    return batch;
}

SampleBatch concat_batches(const std::vector<SampleBatch>& chunks) {
    if (chunks.empty())
        throw EmptyBatch("sampling", "concat_batches", "no chunks given");
    SampleBatch out;
    out.m = chunks[0].m;
    out.seed = chunks[0].seed;
    out.stream_id = chunks[0].stream_id;
    long long total = 0;
    for (auto& c : chunks) {
        if (c.m != out.m)
            throw DimensionMismatch("sampling", "concat_batches",
                                    "mode count mismatch");
        total += c.N;
    }
    out.N = total;
    out.data = Mat(total, 2 * out.m);
    long long row = 0;
    for (auto& c : chunks) {
        out.data.middleRows(row, c.N) = c.data;
        row += c.N;
    }
    return out;
}

void save_batch_csv(const SampleBatch& batch, const std::string& path) {
    std::ofstream f(path);
    if (!f)
        throw Error("sampling", "save_batch_csv", "cannot open " + path);
    for (int i = 0; i < batch.m; ++i)
        f << (i ? "," : "") << 'X' << (i + 1) << ",P" << (i + 1);
    f << '\n';
    char buf[32];
    for (long long r = 0; r < batch.N; ++r) {
        for (int c = 0; c < 2 * batch.m; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", batch.data(r, c));
            f << (c ? "," : "") << buf;
        }
        f << '\n';
    }
}

SampleBatch load_batch_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error("sampling", "load_batch_csv", "cannot open " + path);
    std::string line;
    if (!std::getline(f, line))
        throw EmptyBatch("sampling", "load_batch_csv", "empty file");
    int cols = 1;
    for (char ch : line)
        if (ch == ',') ++cols;
    std::vector<double> vals;
    long long rows = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int c = 0;
        while (std::getline(ss, cell, ',')) {
            vals.push_back(std::stod(cell));
            ++c;
        }
        if (c != cols)
            throw DimensionMismatch("sampling", "load_batch_csv",
                                    "ragged row in CSV");
        ++rows;
    }
    SampleBatch batch;
    batch.m = cols / 2;
    batch.N = rows;
    batch.data = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic,
                                          Eigen::Dynamic, Eigen::RowMajor>>(
        vals.data(), rows, cols);
    return batch;
}

void save_batch_binary(const SampleBatch& batch, const std::string& path) {
    nlohmann::json header = {{"m", batch.m},
                             {"N", batch.N},
                             {"seed", batch.seed},
                             {"stream_id", batch.stream_id}};
    std::string h = header.dump();
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("sampling", "save_batch_binary", "cannot open " + path);
    std::uint64_t hlen = h.size();
    f.write(reinterpret_cast<const char*>(&hlen), sizeof hlen);
    f.write(h.data(), static_cast<std::streamsize>(hlen));
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
        rm = batch.data;
    f.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(sizeof(double) * rm.size()));
}

SampleBatch load_batch_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("sampling", "load_batch_binary", "cannot open " + path);
    std::uint64_t hlen = 0;
    f.read(reinterpret_cast<char*>(&hlen), sizeof hlen);
    std::string h(hlen, '\0');
    f.read(h.data(), static_cast<std::streamsize>(hlen));
    nlohmann::json header = nlohmann::json::parse(h);
    SampleBatch batch;
    batch.m = header.at("m").get<int>();
    batch.N = header.at("N").get<long long>();
    batch.seed = header.at("seed").get<std::uint64_t>();
    batch.stream_id = header.at("stream_id").get<std::uint64_t>();
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(
        batch.N, 2 * batch.m);
    f.read(reinterpret_cast<char*>(rm.data()),
           static_cast<std::streamsize>(sizeof(double) * rm.size()));
    if (!f)
        throw Error("sampling", "load_batch_binary", "truncated file");
    batch.data = rm;
    return batch;
}

} // namespace gslearn

#include "pforge/packing.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "pforge/geometry.hpp"
#include "pforge/parallel.hpp"

namespace pforge {

namespace {

unsigned __int128 checked_ipow(std::int64_t base, int n) {
    if (base < 0) throw std::overflow_error("density_ratio: negative base");
    unsigned __int128 v = 1;
    const auto b = static_cast<unsigned __int128>(base);
    for (int i = 0; i < n; ++i) {
        if (b != 0 && v > (~static_cast<unsigned __int128>(0)) / b)
            throw std::overflow_error("density_ratio: power exceeds 128 bits");
        v *= b;
    }
    return v;
}

std::int64_t sq_dist(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    std::int64_t d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t d = a[i] - b[i];
        d2 += d * d;
    }
    return d2;
}

}  // namespace

long double Packing::density() const {
    const int n = params.n;
    long double r_pow = 1.0L, box_pow = 1.0L;
    for (int i = 0; i < n; ++i) {
        r_pow *= static_cast<long double>(params.r);
        box_pow *= static_cast<long double>(params.s + 2 * params.r);
    }
    return static_cast<long double>(count()) *
           static_cast<long double>(unit_ball_volume(n)) * r_pow / box_pow;
}

double Packing::density_log2() const {
    if (count() == 0) return -std::numeric_limits<double>::infinity();
    const double n = params.n;
    return std::log2(static_cast<double>(count())) + log2_unit_ball_volume(params.n) +
           n * std::log2(static_cast<double>(params.r)) -
           n * std::log2(static_cast<double>(params.s + 2 * params.r));
}

Packing::DensityRatio Packing::density_ratio() const {
    return {count(), checked_ipow(params.r, params.n),
            checked_ipow(params.s + 2 * params.r, params.n)};
}

Packing assemble(const PackingParams& p, const IndependentSet& iset,
                 const LatticeGraph& g) {
    p.validate();
    if (g.params != p)
        throw std::logic_error("assemble: graph was built from different params");
    if (!is_independent(g, iset.vertices))
        throw std::logic_error("assemble: vertex set is not independent");

    Packing pk;
    pk.params = p;
    pk.centers.reserve(iset.vertices.size() * static_cast<std::size_t>(p.n));
    for (const auto v : iset.vertices)
        for (const auto c : g.vertex(v)) pk.centers.push_back(c);
    return pk;
}

VerificationReport verify(const Packing& pk, unsigned threads) {
    const int n = pk.params.n;
    const std::int64_t r = pk.params.r;
    const std::int64_t half = pk.params.s / 2;
    const std::int64_t min_ok = 4 * r * r;  // touching spheres are legal
    const std::size_t count = pk.count();

    VerificationReport report;
    for (std::size_t i = 0; i < count; ++i) {
        const auto c = pk.center(i);
        for (int a = 0; a < n; ++a) {
            if (c[a] > half || c[a] < -half) {
                report.out_of_cube.push_back(i);
                break;
            }
        }
    }
    report.containment_ok = report.out_of_cube.empty();

    std::mutex merge_mutex;
    std::optional<std::int64_t> min_sq;
    std::vector<Violation> violations;

    auto record = [&](std::vector<Violation>& local, std::int64_t& local_min) {
        std::lock_guard lock(merge_mutex);
        violations.insert(violations.end(), local.begin(), local.end());
        if (local_min != std::numeric_limits<std::int64_t>::max())
            min_sq = min_sq ? std::min(*min_sq, local_min) : local_min;
    };

    if (count <= 10'000) {
        parallel_chunks(count, 128, threads, [&](std::size_t begin, std::size_t end) {
            std::vector<Violation> local;
            std::int64_t local_min = std::numeric_limits<std::int64_t>::max();
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t j = i + 1; j < count; ++j) {
                    const std::int64_t d2 = sq_dist(pk.center(i), pk.center(j));
                    local_min = std::min(local_min, d2);
                    if (d2 < min_ok) local.push_back({i, j, d2});
                }
            record(local, local_min);
        });
        report.exhaustive_pairs = true;
    } else {
        // Cell list with bucket side 2r: any violating pair shares a bucket
        // or sits in adjacent ones.
        const std::int64_t cell = 2 * r;
        std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;
        std::string key;
        auto key_of = [&](std::span<const std::int64_t> c, std::span<const std::int64_t> off) {
            key.clear();
            for (int a = 0; a < n; ++a) {
                std::int64_t b = c[a] >= 0 ? c[a] / cell : -((-c[a] + cell - 1) / cell);
                b += off.empty() ? 0 : off[a];
                key += std::to_string(b);
                key += ',';
            }
            return key;
        };
        for (std::size_t i = 0; i < count; ++i)
            buckets[key_of(pk.center(i), {})].push_back(static_cast<std::uint32_t>(i));

        parallel_chunks(count, 1024, threads, [&](std::size_t begin, std::size_t end) {
            std::vector<Violation> local;
            std::int64_t local_min = std::numeric_limits<std::int64_t>::max();
            std::vector<std::int64_t> off(n, -1);
            std::string local_key;
            for (std::size_t i = begin; i < end; ++i) {
                std::fill(off.begin(), off.end(), -1);
                for (;;) {
                    const auto it = buckets.find(key_of(pk.center(i), off));
                    if (it != buckets.end()) {
                        for (const auto j : it->second)
                            if (j > i) {
                                const std::int64_t d2 =
                                    sq_dist(pk.center(i), pk.center(j));
                                local_min = std::min(local_min, d2);
                                if (d2 < min_ok)
                                    local.push_back({i, static_cast<std::size_t>(j), d2});
                            }
                    }
                    int axis = n - 1;
                    while (axis >= 0 && off[axis] == 1) off[axis--] = -1;
                    if (axis < 0) break;
                    ++off[axis];
                }
            }
            record(local, local_min);
        });
        report.exhaustive_pairs = false;
    }

    std::sort(violations.begin(), violations.end(),
              [](const Violation& a, const Violation& b) {
                  return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    report.violations = std::move(violations);
    report.min_squared_distance = min_sq;
    report.separation_ok = report.violations.empty();
    return report;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: EVP_Digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

void export_packing(const Packing& pk, std::ostream& os) {
    os << export_packing_string(pk);
}

std::string export_packing_string(const Packing& pk) {
    std::string body = "n=" + std::to_string(pk.params.n) +
                       " r=" + std::to_string(pk.params.r) +
                       " s=" + std::to_string(pk.params.s) +
                       " count=" + std::to_string(pk.count()) + "\n";
    const std::size_t count = pk.count();
    for (std::size_t i = 0; i < count; ++i) {
        const auto c = pk.center(i);
        for (int a = 0; a < pk.params.n; ++a) {
            if (a) body += ' ';
            body += std::to_string(c[a]);
        }
        body += '\n';
    }
    return body + "sha256=" + sha256_hex(body) + "\n";
}

namespace {

std::int64_t parse_int(std::string_view token, std::size_t line, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(std::string("expected integer for ") + what + ", got '" +
                             std::string(token) + "'",
                         line);
    return value;
}

std::int64_t parse_field(std::string_view token, std::string_view name,
                         std::size_t line) {
    if (token.substr(0, name.size()) != name || token.size() <= name.size() ||
        token[name.size()] != '=')
        throw ParseError("expected '" + std::string(name) + "=<int>' field", line);
    return parse_int(token.substr(name.size() + 1), line, name.data());
}

}  // namespace

Packing import_packing(std::istream& is) {
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return import_packing_string(buffer.str());
}

Packing import_packing_string(std::string_view text) {
    std::size_t line_no = 1;
    std::size_t pos = 0;
    auto next_line = [&](const char* what) -> std::string_view {
        if (pos >= text.size())
            throw ParseError(std::string("unexpected end of file, expected ") + what,
                             line_no);
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            throw ParseError("missing trailing newline", line_no);
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        return line;
    };

    // Header
    const std::string_view header = next_line("header");
    std::vector<std::string_view> tokens;
    for (std::size_t i = 0; i < header.size();) {
        const std::size_t sp = header.find(' ', i);
        const std::size_t end = sp == std::string_view::npos ? header.size() : sp;
        if (end > i) tokens.push_back(header.substr(i, end - i));
        i = end + 1;
    }
    if (tokens.size() != 4) throw ParseError("header must be 'n=.. r=.. s=.. count=..'", 1);
    PackingParams params;
    params.n = static_cast<int>(parse_field(tokens[0], "n", 1));
    params.r = parse_field(tokens[1], "r", 1);
    params.s = parse_field(tokens[2], "s", 1);
    const std::int64_t count = parse_field(tokens[3], "count", 1);
    if (count < 0) throw ParseError("count must be >= 0", 1);
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }

    Packing pk;
    pk.params = params;
    pk.centers.reserve(static_cast<std::size_t>(count) * params.n);
    for (std::int64_t i = 0; i < count; ++i) {
        ++line_no;
        const std::string_view line = next_line("center line");
        std::size_t field = 0;
        for (std::size_t j = 0; j < line.size();) {
            const std::size_t sp = line.find(' ', j);
            const std::size_t end = sp == std::string_view::npos ? line.size() : sp;
            if (end > j) {
                pk.centers.push_back(parse_int(line.substr(j, end - j), line_no, "coordinate"));
                ++field;
            }
            j = end + 1;
        }
        if (field != static_cast<std::size_t>(params.n))
            throw ParseError("expected " + std::to_string(params.n) +
                                 " coordinates, got " + std::to_string(field),
                             line_no);
    }

    ++line_no;
    const std::string_view sha_line = next_line("sha256 line");
    if (sha_line.substr(0, 7) != "sha256=")
        throw ParseError("expected 'sha256=<hex>' line", line_no);
    if (pos != text.size())
        throw ParseError("trailing data after checksum", line_no + 1);
    const std::string_view body = text.substr(0, text.size() - sha_line.size() - 1);
    if (sha_line.substr(7) != sha256_hex(body))
        throw ParseError("checksum mismatch", line_no);

    const VerificationReport report = verify(pk);
    if (!report.pass())
        throw VerificationError("imported packing failed verification", report);
    return pk;
}

}  // namespace pforge

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chronovec {

// Error taxonomy. The CLI maps every chronovec::Error to exit code 2;
// anything thrown by the argument parser maps to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : Error {
    using Error::Error;
};
// Recoverable per-line parse failure; carries the 1-based line number so the
// caller can skip-and-count or abort.
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    std::size_t line_no;
};
struct ValidationError : Error {
    using Error::Error;
};
struct LookupError : Error {
    using Error::Error;
};
// Statistically undefined result (zero vector, constant rank series).
struct DegenerateError : Error {
    using Error::Error;
};
// Cross-period comparison requested on embeddings that live in separate
// vector spaces and no alignment map was supplied.
struct GuardError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};

std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 14695981039346656037ull);
std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h);
std::uint64_t mix64(std::uint64_t x);  // splitmix64 finalizer
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (0x9e3779b97f4a7c15ull + b));
}

// Deterministic RNG. All value mappings are implemented here (not via
// std::*_distribution) so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix64(seed ^ 0xc2b2ae3d27d4eb4full)) {}

    std::uint64_t next_u64() { return gen_(); }
    double uniform01() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    std::uint32_t uniform_below(std::uint32_t n) {  // [0, n)
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }
    double gaussian();

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string_view> split_char(std::string_view s, char sep);
bool parse_i64(std::string_view s, std::int64_t& out);
bool parse_double(std::string_view s, double& out);
std::string to_hex16(std::uint64_t v);

enum class LogLevel { off = 0, error = 1, warn = 2, info = 3, debug = 4 };
LogLevel log_level();  // from CHRONOVEC_LOG (off|error|warn|info|debug), default warn
void log_msg(LogLevel lvl, const std::string& msg);
inline void log_error(const std::string& m) { log_msg(LogLevel::error, m); }
inline void log_warn(const std::string& m) { log_msg(LogLevel::warn, m); }
inline void log_info(const std::string& m) { log_msg(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log_msg(LogLevel::debug, m); }

}  // namespace chronovec

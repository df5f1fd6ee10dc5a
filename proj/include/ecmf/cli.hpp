#ifndef ECMF_CLI_HPP
#define ECMF_CLI_HPP

#include "ecmf/elliptic.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ecmf {

enum class Verdict { Pass, Fail, Informational };
std::string to_string(Verdict v);

// One command execution: echoed inputs, structured results, a verdict and
// a human rendering. The JSON payload is deterministic for fixed inputs;
// anything run-dependent (timestamps) belongs in a separate envelope.
struct RunReport {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json results;
    Verdict verdict = Verdict::Informational;
    std::string text;

    nlohmann::json to_json() const;
    int exit_code() const { return verdict == Verdict::Fail ? 1 : 0; }
};

struct ApCacheEntry {
    std::string curve_id;
    std::int64_t p;
    std::int64_t ap;
    bool good;
};

// CSV-backed a_p store: header line plus "curveId,p,ap,good" rows with the
// curve id quoted. The cache only accelerates; 5% of hits are re-derived
// per run and any disagreement fails the run.
class ApCache {
public:
    explicit ApCache(std::filesystem::path file);

    const std::vector<std::string>& corrupt_lines() const { return corrupt_; }
    std::optional<ApCacheEntry> lookup(const std::string& curve_id, std::int64_t p) const;
    void store(const ApCacheEntry& entry);
    bool dirty() const { return dirty_; }
    // Whole-file replace via a temporary, never a partial write.
    void save() const;

    static std::string format_version() { return "ecmf-ap-cache v1"; }

private:
    std::filesystem::path file_;
    std::vector<ApCacheEntry> entries_;
    std::vector<std::string> corrupt_;
    bool dirty_ = false;
};

struct ApOptions {
    int jobs = 0; // 0: hardware concurrency
    std::optional<std::filesystem::path> cache_path;
    std::optional<std::uint64_t> audit_seed; // reproducible audits in tests
};

RunReport cmd_ap(const std::string& curve, std::int64_t pmax, const ApOptions& opts = {});
RunReport cmd_zeta(const std::string& curve, std::int64_t p, int depth);
RunReport cmd_modularity(const std::string& curve, std::int64_t level, std::int64_t pmax,
                         int jobs = 0);
RunReport cmd_lvalue(const std::string& curve, double s, std::int64_t cutoff,
                     const std::string& method);
RunReport cmd_jinv(int terms);
RunReport cmd_genus(std::int64_t N);
RunReport cmd_cusps(std::int64_t N);
RunReport cmd_classify(const std::string& matrix);
RunReport cmd_frey(std::int64_t a, std::int64_t b, std::int64_t p);
RunReport cmd_fermat(std::int64_t bound, int nmax, bool control_mode);
RunReport cmd_bsd_explore(const std::string& curve, std::int64_t cutoff);

// Default cache location: $ECMF_CACHE_DIR/ap_cache.csv when the variable
// is set, otherwise none.
std::optional<std::filesystem::path> default_cache_path();

} // namespace ecmf

#endif

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "adasolve/decimal.hpp"
#include "adasolve/errors.hpp"

namespace adasolve {

class CostError : public Error {
public:
    using Error::Error;
};

struct ModelPrice {
    Decimal prompt_per_1k;
    Decimal completion_per_1k;
};

/// model id -> dollars per 1K tokens. Price-zero entries model local runs.
class PriceTable {
public:
    PriceTable() = default;
    explicit PriceTable(std::map<std::string, ModelPrice> prices);

    /// {"model": {"input_per_1k": 0.0015, "output_per_1k": 0.002}, ...}
    static PriceTable from_json(const nlohmann::json& j);
    static PriceTable load(const std::filesystem::path& path);

    [[nodiscard]] const ModelPrice* find(const std::string& model) const;
    [[nodiscard]] const ModelPrice& at(const std::string& model) const;
    [[nodiscard]] const std::map<std::string, ModelPrice>& entries() const { return prices_; }

private:
    std::map<std::string, ModelPrice> prices_;
};

struct ModelUsage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
    long calls = 0;

    ModelUsage& operator+=(const ModelUsage& o) {
        prompt_tokens += o.prompt_tokens;
        completion_tokens += o.completion_tokens;
        calls += o.calls;
        return *this;
    }
    friend bool operator==(const ModelUsage&, const ModelUsage&) = default;
};

using UsageMap = std::map<std::string, ModelUsage>;

/// Append-only token accounting; record() is safe from concurrent workers.
class CostLedger {
public:
    CostLedger() = default;
    CostLedger(const CostLedger& other) : usage_(other.snapshot()) {}
    CostLedger& operator=(const CostLedger&) = delete;

    void record(const std::string& model, long prompt_tokens, long completion_tokens);
    void merge(const CostLedger& other);
    [[nodiscard]] UsageMap snapshot() const;

private:
    mutable std::mutex mutex_;
    UsageMap usage_;
};

/// Dollars for one model's usage.
Decimal usage_cost(const ModelUsage& usage, const ModelPrice& price);

/// Sum over models of prompt/1000 * p_in + completion/1000 * p_out. Throws
/// CostError naming the first unpriced model.
Decimal cost(const UsageMap& usage, const PriceTable& prices);
Decimal cost(const CostLedger& ledger, const PriceTable& prices);

struct ModelCost {
    ModelUsage usage;
    Decimal dollars;
};

struct CostReport {
    std::map<std::string, ModelCost> per_model;
    Decimal total;
    std::optional<Decimal> baseline;
    std::optional<Decimal> saved_percent;
};

CostReport make_cost_report(const UsageMap& usage, const PriceTable& prices,
                            std::optional<Decimal> baseline = std::nullopt);

/// 100 * (1 - adaptive / baseline), half-up to one decimal.
Decimal saved_percent(const Decimal& adaptive_cost, const Decimal& baseline_cost);

/// Same quantity before presentation rounding (6 decimals).
Decimal saved_percent_unrounded(const Decimal& adaptive_cost, const Decimal& baseline_cost);

struct CostAccuracy {
    Decimal cost;
    Decimal accuracy;
};

struct RelativePoint {
    Decimal relative_cost;
    Decimal relative_accuracy;
};

/// Component-wise ratios adaptive / baseline at 6 decimals.
RelativePoint relative_point(const CostAccuracy& adaptive, const CostAccuracy& baseline);

}  // namespace adasolve

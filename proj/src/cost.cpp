#include "adasolve/cost.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace adasolve {

namespace {

const Decimal kPerThousand(Decimal::Int(1), 3);

Decimal json_decimal(const nlohmann::json& v, const std::string& what) {
    if (v.is_string()) return Decimal::from_string(v.get<std::string>());
    if (v.is_number()) return Decimal::from_string(v.dump());
    throw ParseError(what + " must be a number");
}

}  // namespace

PriceTable::PriceTable(std::map<std::string, ModelPrice> prices) : prices_(std::move(prices)) {
    for (const auto& [model, p] : prices_) {
        if (p.prompt_per_1k.is_negative() || p.completion_per_1k.is_negative()) {
            throw ValidationError("negative price for model " + model);
        }
    }
}

PriceTable PriceTable::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("price table must be an object keyed by model id");
    std::map<std::string, ModelPrice> prices;
    for (const auto& [model, entry] : j.items()) {
        try {
            prices[model] = ModelPrice{json_decimal(entry.at("input_per_1k"), model + ".input_per_1k"),
                                       json_decimal(entry.at("output_per_1k"), model + ".output_per_1k")};
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("price entry " + model + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw ParseError("price entry " + model + ": " + e.what());
        }
    }
    return PriceTable(std::move(prices));
}

PriceTable PriceTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open price table " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

const ModelPrice* PriceTable::find(const std::string& model) const {
    const auto it = prices_.find(model);
    return it == prices_.end() ? nullptr : &it->second;
}

const ModelPrice& PriceTable::at(const std::string& model) const {
    if (const auto* p = find(model)) return *p;
    throw CostError("no price for model '" + model + "'");
}

void CostLedger::record(const std::string& model, long prompt_tokens, long completion_tokens) {
    if (prompt_tokens < 0 || completion_tokens < 0) throw ValidationError("negative token count for " + model);
    std::lock_guard lock(mutex_);
    usage_[model] += ModelUsage{prompt_tokens, completion_tokens, 1};
}

void CostLedger::merge(const CostLedger& other) {
    const auto theirs = other.snapshot();
    std::lock_guard lock(mutex_);
    for (const auto& [model, u] : theirs) usage_[model] += u;
}

UsageMap CostLedger::snapshot() const {
    std::lock_guard lock(mutex_);
    return usage_;
}

Decimal usage_cost(const ModelUsage& usage, const ModelPrice& price) {
    return (Decimal(usage.prompt_tokens) * price.prompt_per_1k + Decimal(usage.completion_tokens) * price.completion_per_1k) *
           kPerThousand;
}

Decimal cost(const UsageMap& usage, const PriceTable& prices) {
    Decimal total;
    for (const auto& [model, u] : usage) total += usage_cost(u, prices.at(model));
    return total;
}

Decimal cost(const CostLedger& ledger, const PriceTable& prices) { return cost(ledger.snapshot(), prices); }

CostReport make_cost_report(const UsageMap& usage, const PriceTable& prices, std::optional<Decimal> baseline) {
    CostReport report;
    for (const auto& [model, u] : usage) {
        const Decimal dollars = usage_cost(u, prices.at(model));
        report.per_model[model] = ModelCost{u, dollars};
        report.total += dollars;
    }
    if (baseline) {
        report.baseline = baseline;
        report.saved_percent = saved_percent(report.total, *baseline);
    }
    return report;
}

Decimal saved_percent_unrounded(const Decimal& adaptive_cost, const Decimal& baseline_cost) {
    if (baseline_cost <= Decimal(0)) throw CostError("baseline cost must be positive");
    return Decimal::divide((baseline_cost - adaptive_cost) * Decimal(100), baseline_cost, 6);
}

Decimal saved_percent(const Decimal& adaptive_cost, const Decimal& baseline_cost) {
    if (baseline_cost <= Decimal(0)) throw CostError("baseline cost must be positive");
    return Decimal::divide((baseline_cost - adaptive_cost) * Decimal(100), baseline_cost, 1);
}

RelativePoint relative_point(const CostAccuracy& adaptive, const CostAccuracy& baseline) {
    if (baseline.cost <= Decimal(0)) throw CostError("baseline cost must be positive");
    if (baseline.accuracy <= Decimal(0)) throw CostError("baseline accuracy must be positive");
    return RelativePoint{Decimal::divide(adaptive.cost, baseline.cost, 6),
                         Decimal::divide(adaptive.accuracy, baseline.accuracy, 6)};
}

}  // namespace adasolve

#include <algorithm>
#include <cstdio>
#include <set>

#include "hier/condense/condense.hpp"
#include "hier/core/error.hpp"

namespace hier {

namespace {

// One (option, arc decision) pair, expressed as a multiple-choice option.
struct Expanded {
    std::size_t option = 0;
    bool condensed = false;
    Rational weight{0};  // kernel contribution
    Rational profit{0};
    Rational term{0};    // contribution to the max term
};

std::vector<std::vector<Expanded>> expand(const AuxInstance& inst) {
    std::vector<std::vector<Expanded>> out;
    for (const auto& group : inst.groups) {
        std::vector<Expanded> g;
        for (std::size_t j = 0; j < group.size(); ++j) {
            const auto& o = group[j];
            g.push_back({j, true, o.kernel, o.inner_profit + o.arc_profit, o.tail});
            g.push_back({j, false, Rational(0), o.inner_profit, o.kernel + o.tail});
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::optional<AuxSolution> solve_filtered(const AuxInstance& inst, const std::vector<std::vector<Expanded>>& exp,
                                          const Rational& max_term, const Rational& budget, const AuxMode& mode) {
    if (budget < 0) return std::nullopt;
    ChoiceInstance ci;
    ci.budget = budget;
    std::vector<std::vector<const Expanded*>> keep;
    for (const auto& g : exp) {
        std::vector<ChoiceOption> opts;
        std::vector<const Expanded*> refs;
        for (const auto& e : g) {
            if (e.term > max_term) continue;
            // Zero-padded so id order follows option order.
            char buf[32];
            std::snprintf(buf, sizeof buf, "%06zu:%d", e.option, e.condensed ? 1 : 0);
            opts.push_back({buf, e.profit, e.weight});
            refs.push_back(&e);
        }
        if (opts.empty()) return std::nullopt;
        ci.groups.push_back(std::move(opts));
        keep.push_back(std::move(refs));
    }
    Selection sel;
    try {
        sel = mode.approx ? multiple_choice_fptas(ci, mode.epsilon) : multiple_choice_exact(ci);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Infeasible) return std::nullopt;
        throw;
    }
    AuxSolution s;
    s.kernel = inst.root_ram;
    for (std::size_t g = 0; g < keep.size(); ++g) {
        const Expanded* pick = nullptr;
        for (std::size_t i = 0; i < keep[g].size(); ++i) {
            if (ci.groups[g][i].id == sel.chosen[g]) pick = keep[g][i];
        }
        const auto& o = inst.groups[g][pick->option];
        s.option.push_back(pick->option);
        s.condensed.push_back(pick->condensed);
        s.selection.chosen.push_back(o.id + ":" + (pick->condensed ? "1" : "0"));
        s.selection.profit += pick->profit;
        s.kernel += pick->weight;
        s.max_term = std::max(s.max_term, pick->term);
    }
    s.selection.weight = s.kernel;
    return s;
}

void check_shape(AuxKind kind, const AuxInstance& inst) {
    bool singleton = kind == AuxKind::K11 || kind == AuxKind::K12 || kind == AuxKind::K13 || kind == AuxKind::K14;
    bool flat = kind == AuxKind::K11 || kind == AuxKind::K12 || kind == AuxKind::K21 || kind == AuxKind::K22;
    if (inst.root_ram < 0) throw ValidationError("root_ram", "root ram must be nonnegative");
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        std::string where = "groups[" + std::to_string(g) + "]";
        const auto& group = inst.groups[g];
        if (group.empty()) throw ValidationError(where, "group has no options");
        if (singleton && group.size() != 1) {
            throw ValidationError(where, std::string("kind ") + to_string(kind) + " takes exactly one option per group");
        }
        for (const auto& o : group) {
            if (o.kernel < 0 || o.tail < 0 || o.inner_profit < 0 || o.arc_profit < 0) {
                throw ValidationError(where + "." + o.id, "values must be nonnegative");
            }
            if (flat && o.tail != 0) {
                throw ValidationError(where + "." + o.id, std::string("kind ") + to_string(kind) + " requires zero tails");
            }
        }
    }
}

bool better(const std::optional<AuxSolution>& cand, const std::optional<AuxSolution>& best) {
    return cand && (!best || cand->selection.profit > best->selection.profit);
}

}  // namespace

AuxKind parse_aux_kind(const std::string& text) {
    static const std::map<std::string, AuxKind> kinds{
        {"1.1", AuxKind::K11}, {"1.2", AuxKind::K12}, {"1.3", AuxKind::K13}, {"1.4", AuxKind::K14},
        {"2.1", AuxKind::K21}, {"2.2", AuxKind::K22}, {"2.3", AuxKind::K23}, {"2.4", AuxKind::K24}};
    auto it = kinds.find(text);
    if (it == kinds.end()) throw Error(ErrorKind::UnknownKind, "unknown auxiliary problem kind '" + text + "'");
    return it->second;
}

const char* to_string(AuxKind kind) {
    switch (kind) {
        case AuxKind::K11: return "1.1";
        case AuxKind::K12: return "1.2";
        case AuxKind::K13: return "1.3";
        case AuxKind::K14: return "1.4";
        case AuxKind::K21: return "2.1";
        case AuxKind::K22: return "2.2";
        case AuxKind::K23: return "2.3";
        case AuxKind::K24: return "2.4";
    }
    return "?";
}

bool is_kind_one(AuxKind kind) {
    return kind == AuxKind::K11 || kind == AuxKind::K13 || kind == AuxKind::K21 || kind == AuxKind::K23;
}

AuxSolution solve_auxiliary(AuxKind kind, const AuxInstance& instance, const AuxMode& mode) {
    check_shape(kind, instance);
    auto exp = expand(instance);

    if (!is_kind_one(kind)) {
        // Tail constraint filters options; the kernel budget is a multiple-choice budget.
        auto s = solve_filtered(instance, exp, instance.b_plus, instance.b_minus - instance.root_ram, mode);
        if (!s) throw Error(ErrorKind::Infeasible, std::string("kind ") + to_string(kind) + " instance has no feasible selection");
        return *s;
    }

    Rational span = instance.b - instance.root_ram;
    std::optional<AuxSolution> best;
    if (kind == AuxKind::K23 && mode.approx && mode.delta > 0 && span > 0) {
        // Guess the max term on a delta grid; constraints may overshoot by delta * span.
        Rational step = mode.delta * span;
        for (std::int64_t t = 0; Rational(t) * step <= span + step; ++t) {
            Rational guess = Rational(t) * step;
            auto s = solve_filtered(instance, exp, guess, span - guess + step, mode);
            if (better(s, best)) best = s;
        }
    } else {
        std::set<Rational> terms{Rational(0)};
        for (const auto& g : exp) {
            for (const auto& e : g) terms.insert(e.term);
        }
        for (const Rational& guess : terms) {
            if (guess > span) break;
            auto s = solve_filtered(instance, exp, guess, span - guess, mode);
            if (better(s, best)) best = s;
        }
    }
    if (!best) throw Error(ErrorKind::Infeasible, std::string("kind ") + to_string(kind) + " instance has no feasible selection");
    return *best;
}

}  // namespace hier

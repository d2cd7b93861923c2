#include "rangenet/potion.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "rangenet/core.hpp"

namespace rangenet {

namespace {

constexpr std::string_view kDefaultRecipes = R"(# base <item> <score>
base a1 1
base a2 1
base a3 1
base b1 1
base b2 1
base b3 1
# recipe <in1> <in2> <in3> <product> <tier> <score>
recipe a1 a2 b1 A1 1 4
recipe a1 a3 b2 B1 1 4
recipe A1 a2 b3 A2 2 16
recipe B1 a3 b3 B2 2 16
recipe A2 b1 b2 A3 3 64
recipe B2 a1 a2 B3 3 64
recipe A3 B3 a1 X 4 256
)";

std::array<ItemId, 3> sorted(std::array<ItemId, 3> t)
{
    std::sort(t.begin(), t.end());
    return t;
}

// Draw `count` distinct items from `pool`, weighted by score, skipping items
// already in `out`. Appends to `out`; false if too few eligible items.
bool draw_weighted(std::vector<ItemId> const& pool, std::vector<ItemId>& out, std::size_t count,
                   RecipeTable const& recipes, RngStream& rng)
{
    std::vector<ItemId> eligible;
    eligible.reserve(pool.size());
    for (ItemId item : pool) {
        if (std::find(out.begin(), out.end(), item) == out.end())
            eligible.push_back(item);
    }
    if (eligible.size() < count)
        return false;

    for (std::size_t k = 0; k < count; ++k) {
        double total = 0.0;
        for (ItemId item : eligible)
            total += recipes.score(item);
        double target = rng.uniform01() * total;
        std::size_t pick = eligible.size() - 1;
        for (std::size_t idx = 0; idx < eligible.size(); ++idx) {
            target -= recipes.score(eligible[idx]);
            if (target < 0.0) {
                pick = idx;
                break;
            }
        }
        out.push_back(eligible[pick]);
        eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return true;
}

} // namespace

//---------------------------------------------------------------------------//

Inventory::Inventory(std::vector<ItemId> items) : items_(std::move(items))
{
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool Inventory::contains(ItemId item) const
{
    return std::binary_search(items_.begin(), items_.end(), item);
}

bool Inventory::insert(ItemId item)
{
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    if (it != items_.end() && *it == item)
        return false;
    items_.insert(it, item);
    return true;
}

//---------------------------------------------------------------------------//

ItemId RecipeTable::add_item(std::string const& name, double score, std::uint32_t tier)
{
    if (by_name_.count(name))
        throw ConfigError("recipe table: item '" + name + "' defined twice");
    if (!(score > 0.0))
        throw ConfigError("recipe table: item '" + name + "' needs a positive score");
    const auto id = static_cast<ItemId>(names_.size());
    names_.push_back(name);
    scores_.push_back(score);
    tiers_.push_back(tier);
    by_name_.emplace(name, id);
    return id;
}

RecipeTable RecipeTable::parse(std::string_view text)
{
    RecipeTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string kind;
        if (!(fields >> kind))
            continue;
        const auto where = " (line " + std::to_string(line_no) + ")";

        if (kind == "base") {
            std::string name;
            double score = 0;
            if (!(fields >> name >> score))
                throw ConfigError("recipe table: malformed base record" + where);
            table.base_.push_back(table.add_item(name, score, 0));
        } else if (kind == "recipe") {
            std::array<std::string, 3> in_names;
            std::string product;
            std::uint32_t tier = 0;
            double score = 0;
            if (!(fields >> in_names[0] >> in_names[1] >> in_names[2] >> product >> tier >> score))
                throw ConfigError("recipe table: malformed recipe record" + where);
            Recipe recipe;
            for (std::size_t k = 0; k < 3; ++k) {
                auto id = table.find(in_names[k]);
                if (!id)
                    throw ConfigError("recipe table: unknown ingredient '" + in_names[k] + "'"
                                      + where);
                recipe.inputs[k] = *id;
            }
            recipe.inputs = sorted(recipe.inputs);
            if (std::adjacent_find(recipe.inputs.begin(), recipe.inputs.end())
                != recipe.inputs.end())
                throw ConfigError("recipe table: repeated ingredient" + where);
            if (tier == 0)
                throw ConfigError("recipe table: recipe tier must be >= 1" + where);
            recipe.product = table.add_item(product, score, tier);
            recipe.tier = tier;
            if (!table.lookup_.emplace(recipe.inputs, recipe.product).second)
                throw ConfigError("recipe table: duplicate ingredient triple" + where);
            table.recipes_.push_back(recipe);
        } else {
            throw ConfigError("recipe table: unknown record kind '" + kind + "'" + where);
        }
        std::string extra;
        if (fields >> extra)
            throw ConfigError("recipe table: trailing field '" + extra + "'" + where);
    }
    table.finalize();
    return table;
}

RecipeTable RecipeTable::load(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read recipe table " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (ConfigError const& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

RecipeTable RecipeTable::default_table()
{
    return parse(kDefaultRecipes);
}

void RecipeTable::finalize()
{
    if (base_.size() < 3)
        throw ConfigError("recipe table: need at least three base items");

    std::array<std::vector<Recipe const*>, 5> by_tier;
    for (auto const& recipe : recipes_) {
        if (recipe.tier > 4)
            throw ConfigError("recipe table: tiers above 4 are not supported");
        by_tier[recipe.tier].push_back(&recipe);
        for (ItemId in : recipe.inputs) {
            if (tiers_[in] >= recipe.tier)
                throw ConfigError("recipe table: '" + names_[recipe.product]
                                  + "' uses an ingredient of equal or higher tier");
        }
    }
    for (std::uint32_t t = 1; t <= 3; ++t) {
        if (by_tier[t].size() != 2)
            throw ConfigError("recipe table: expected two tier-" + std::to_string(t)
                              + " recipes (one per trajectory)");
    }
    if (by_tier[4].size() != 1)
        throw ConfigError("recipe table: expected exactly one tier-4 crossover recipe");

    auto uses = [](Recipe const& r, ItemId item) {
        return std::find(r.inputs.begin(), r.inputs.end(), item) != r.inputs.end();
    };
    auto count_prev_tier = [&](Recipe const& r, std::uint32_t t) {
        return std::count_if(r.inputs.begin(), r.inputs.end(),
                             [&](ItemId in) { return tiers_[in] == t; });
    };
    for (std::uint32_t t = 2; t <= 3; ++t) {
        auto const& a = *by_tier[t][0];
        auto const& b = *by_tier[t][1];
        auto const& pa = *by_tier[t - 1][0];
        auto const& pb = *by_tier[t - 1][1];
        if (count_prev_tier(a, t - 1) != 1 || count_prev_tier(b, t - 1) != 1)
            throw ConfigError("recipe table: each tier-" + std::to_string(t)
                              + " recipe must use exactly one tier-" + std::to_string(t - 1)
                              + " product");
        const bool straight = uses(a, pa.product) && uses(b, pb.product);
        const bool crossed = uses(a, pb.product) && uses(b, pa.product);
        if (!straight && !crossed)
            throw ConfigError("recipe table: tier-" + std::to_string(t)
                              + " recipes must continue different trajectories");
    }
    auto const& top = *by_tier[4][0];
    if (!uses(top, by_tier[3][0]->product) || !uses(top, by_tier[3][1]->product))
        throw ConfigError("recipe table: the tier-4 recipe must use both tier-3 products");

    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = 0; j < names_.size(); ++j) {
            if (tiers_[i] < tiers_[j] && !(scores_[i] < scores_[j]))
                throw ConfigError("recipe table: score of '" + names_[j]
                                  + "' must exceed every lower-tier score");
        }
    }
    crossover_ = top.product;
}

std::optional<ItemId> RecipeTable::find(std::string_view name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

std::optional<ItemId> RecipeTable::combine(std::array<ItemId, 3> triple) const
{
    auto it = lookup_.find(sorted(triple));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::vector<ItemId> RecipeTable::derivable_from(std::vector<ItemId> const& start) const
{
    std::set<ItemId> have(start.begin(), start.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto const& recipe : recipes_) {
            if (have.count(recipe.product))
                continue;
            if (std::all_of(recipe.inputs.begin(), recipe.inputs.end(),
                            [&](ItemId in) { return have.count(in) > 0; })) {
                have.insert(recipe.product);
                grew = true;
            }
        }
    }
    return {have.begin(), have.end()};
}

std::string RecipeTable::to_text() const
{
    std::ostringstream out;
    for (ItemId item : base_)
        out << "base " << names_[item] << ' ' << scores_[item] << '\n';
    for (auto const& r : recipes_) {
        out << "recipe " << names_[r.inputs[0]] << ' ' << names_[r.inputs[1]] << ' '
            << names_[r.inputs[2]] << ' ' << names_[r.product] << ' ' << r.tier << ' '
            << scores_[r.product] << '\n';
    }
    return out.str();
}

//---------------------------------------------------------------------------//

std::optional<ItemId> try_combine(Inventory const& inv_i, Inventory const& inv_j,
                                  RecipeTable const& recipes, RngStream& rng)
{
    const std::size_t from_i = rng.bernoulli(0.5) ? 1 : 2;
    std::vector<ItemId> chosen;
    chosen.reserve(3);
    if (!draw_weighted(inv_i.items(), chosen, from_i, recipes, rng))
        return std::nullopt;
    if (!draw_weighted(inv_j.items(), chosen, 3 - from_i, recipes, rng))
        return std::nullopt;
    return recipes.combine({chosen[0], chosen[1], chosen[2]});
}

PotionStepReport potion_step(NetworkSnapshot const& snap, std::vector<Inventory>& inventories,
                             PotionConfig const& cfg, RngStream& rng)
{
    const auto n = snap.node_count();
    if (inventories.size() != n)
        throw std::invalid_argument("potion_step: one inventory per agent required");

    std::vector<AgentId> order(n);
    std::iota(order.begin(), order.end(), AgentId{0});
    rng.shuffle(std::span(order));

    auto const& before = inventories;
    std::vector<Inventory> after = inventories;
    PotionStepReport report;

    for (AgentId agent : order) {
        auto nbrs = snap.neighbors(agent);
        if (nbrs.empty())
            continue;
        const AgentId partner = nbrs[rng.uniform_index(nbrs.size())];
        ++report.attempts;
        const auto product = try_combine(before[agent], before[partner], cfg.recipes, rng);
        if (!product)
            continue;
        ++report.successes;
        after[agent].insert(*product);
        after[partner].insert(*product);
        if (*product == cfg.recipes.crossover_item())
            report.crossover_created = true;

        if (before[agent].contains(*product) && before[partner].contains(*product))
            continue;
        report.new_products.push_back(*product);
        for (AgentId source : {agent, partner}) {
            for (AgentId nb : snap.neighbors(source)) {
                if (rng.bernoulli(cfg.p_diff))
                    after[nb].insert(*product);
            }
        }
    }
    inventories = std::move(after);
    return report;
}

} // namespace rangenet

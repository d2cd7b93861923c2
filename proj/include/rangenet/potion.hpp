#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangenet/rng.hpp"
#include "rangenet/snapshot.hpp"

namespace rangenet {

using ItemId = std::uint16_t;

/// Sorted set of item ids held by one agent.
class Inventory {
public:
    Inventory() = default;
    explicit Inventory(std::vector<ItemId> items);

    bool contains(ItemId item) const;
    /// Returns true if the item was new.
    bool insert(ItemId item);

    std::vector<ItemId> const& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }

    bool operator==(Inventory const&) const = default;

private:
    std::vector<ItemId> items_;
};

struct Recipe {
    std::array<ItemId, 3> inputs{};  ///< sorted
    ItemId product = 0;
    std::uint32_t tier = 0;
};

/*!
 * Items, scores and valid combinations for the potion task.
 *
 * Text format, one record per line, '#' starts a comment:
 *
 *     base   <item> <score>
 *     recipe <in1> <in2> <in3> <product> <tier> <score>
 *
 * Base items form the starting inventory. Valid tables have two trajectories
 * of tiers 1-3 (each tier-t recipe consumes exactly one tier-(t-1) product of
 * its own trajectory) and a single tier-4 recipe consuming both tier-3
 * products. Item scores strictly increase with tier.
 */
class RecipeTable {
public:
    /// Throws ConfigError on malformed text or an invalid structure.
    static RecipeTable parse(std::string_view text);
    /// Throws IoError if unreadable, ConfigError if invalid.
    static RecipeTable load(std::filesystem::path const& path);
    static RecipeTable default_table();

    std::size_t item_count() const noexcept { return names_.size(); }
    std::string const& name(ItemId item) const { return names_.at(item); }
    std::optional<ItemId> find(std::string_view name) const;
    double score(ItemId item) const { return scores_.at(item); }
    std::uint32_t tier(ItemId item) const { return tiers_.at(item); }

    std::vector<ItemId> const& base_items() const noexcept { return base_; }
    std::vector<Recipe> const& recipes() const noexcept { return recipes_; }
    ItemId crossover_item() const noexcept { return crossover_; }

    /// Product of an unordered triple, if it is a valid combination.
    std::optional<ItemId> combine(std::array<ItemId, 3> triple) const;

    /// Every item reachable from `start` by repeatedly applying recipes.
    std::vector<ItemId> derivable_from(std::vector<ItemId> const& start) const;

    std::string to_text() const;

private:
    ItemId add_item(std::string const& name, double score, std::uint32_t tier);
    void finalize();

    std::vector<std::string> names_;
    std::vector<double> scores_;
    std::vector<std::uint32_t> tiers_;
    std::map<std::string, ItemId, std::less<>> by_name_;
    std::vector<ItemId> base_;
    std::vector<Recipe> recipes_;
    std::map<std::array<ItemId, 3>, ItemId> lookup_;
    ItemId crossover_ = 0;
};

struct PotionConfig {
    RecipeTable recipes = RecipeTable::default_table();
    /// Empty means "all base items".
    std::vector<ItemId> starting_inventory;
    double p_diff = 0.5;

    std::vector<ItemId> start_items() const
    {
        return starting_inventory.empty() ? recipes.base_items() : starting_inventory;
    }
};

/*!
 * One combination attempt between agents i and j.
 *
 * A fair coin decides whether i contributes one or two items; j contributes
 * the rest of the three. Each contributor draws distinct items weighted by
 * score, and j draws only among items not already chosen by i. Returns the
 * product when the triple is a recipe; nothing when a contributor runs out
 * of eligible items or the triple is not a recipe.
 */
std::optional<ItemId> try_combine(Inventory const& inv_i, Inventory const& inv_j,
                                  RecipeTable const& recipes, RngStream& rng);

struct PotionStepReport {
    std::uint32_t attempts = 0;
    std::uint32_t successes = 0;
    std::vector<ItemId> new_products;  ///< products new to a participant
    bool crossover_created = false;
};

/// One potion-task timestep over pre-step inventories (synchronous update).
PotionStepReport potion_step(NetworkSnapshot const& snap, std::vector<Inventory>& inventories,
                             PotionConfig const& cfg, RngStream& rng);

} // namespace rangenet

#pragma once

#include <memory>

#include "knv/sets.hpp"

namespace knv {

/// Stateful checker for a monotone forbidden structure over a stack of sets:
/// once the pushed sets contain the structure, any superset stack does too.
class FamilyOracle {
public:
    virtual ~FamilyOracle() = default;

    /// Pushes a set and returns currently_free() afterwards.
    virtual bool push(SubsetMask set) = 0;
    /// Throws std::logic_error on an empty stack.
    virtual void pop() = 0;
    [[nodiscard]] virtual bool currently_free() const = 0;
    [[nodiscard]] virtual std::size_t depth() const = 0;
    /// A new checker with the same forbidden structure and an empty stack.
    [[nodiscard]] virtual std::unique_ptr<FamilyOracle> fresh() const = 0;
};

}  // namespace knv

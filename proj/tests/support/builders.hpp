// Shorthand constructors for toy fixtures.
#pragma once

#include <initializer_list>

#include "invnet/categorize.hpp"
#include "invnet/types.hpp"

namespace testutil {

inline invnet::CategoryId cat(int index) { return invnet::CategoryId::from_index(index); }

inline invnet::Date day(int offset) {
    return invnet::Date(invnet::Date::from_ymd(2004, 1, 5).days_since_epoch() + offset);
}

inline invnet::CategorizedTransaction tx(int day_offset, int category, std::int64_t volume) {
    return {day(day_offset), cat(category), volume};
}

inline invnet::BinaryNetwork net(std::initializer_list<std::pair<int, int>> edges) {
    invnet::BinaryNetwork g;
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

}  // namespace testutil

#pragma once

#include "gra/relalg/relation.hpp"

namespace gra {

ADRelation equality_relation(const Domain& d);
ADRelation equality_relation(std::size_t domain_size);

ADRelation apply_p(const ADRelation& r);
ADRelation apply_s(const ADRelation& r);
ADRelation apply_I(const ADRelation& r);
ADRelation complement(const ADRelation& r, const Domain& d);
ADRelation complement(const ADRelation& r);
ADRelation join(const ADRelation& r, const ADRelation& t);
ADRelation project(const ADRelation& r);
ADRelation suffix_intersection(const ADRelation& r, const ADRelation& t);

ADRelation set_union(const ADRelation& r, const ADRelation& t);
ADRelation set_intersection(const ADRelation& r, const ADRelation& t);
ADRelation set_difference(const ADRelation& r, const ADRelation& t);

ADRelation equicardinality(const ADRelation& r, const ADRelation& t);

// n^k without overflow checks; callers only use it for sizes of existing relations.
std::size_t ipow(std::size_t n, std::size_t k) noexcept;

}  // namespace gra

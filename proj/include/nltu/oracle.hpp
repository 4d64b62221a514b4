/*!
  \file oracle.hpp
  \brief Ground truth for LTU capacity: monotone functions and positive
         threshold functions, computed without the parameter-space search

  A monotone function is a positive threshold function iff some
  nonnegative integer weights and `theta >= 1` reproduce it. This module
  decides that with a bounded integer-weight search whose answers are
  self-certifying: every positive answer carries weights that are
  re-evaluated against the queried table.
*/

#pragma once

#include "truth_table.hpp"

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace nltu
{

/* integer weights up to this bound decide separability for every n <= 6 */
inline constexpr int default_weight_bound = 15;

/*! \brief All monotone increasing functions of `arity` variables,
           including both constants. Built by the lattice recursion
           f = f0 | x_{n-1} f1 with f0 <= f1. */
function_set enumerate_monotone( unsigned arity );

/*! \brief Same set as `enumerate_monotone`, in ascending mask order. */
std::vector<std::uint64_t> monotone_masks( unsigned arity );

struct separability_certificate
{
  bool separable = false;
  /* present iff separable; the largest weight is minimal over all
     realisations of the function */
  std::vector<int> weights;
  int threshold = 0;
  /* present only when a two-point witness of failure exists: a pair p ⊆ q
     with f(p) = 1, f(q) = 0 for non-monotone tables, or two true points
     x + e_i, y + e_j whose swapped counterparts x + e_j, y + e_i are both
     false (no weight vector can separate them) */
  std::optional<std::pair<std::uint32_t, std::uint32_t>> violating_pair;
};

/*! \brief Decides whether `tt` is computable by an LTU with nonnegative
           integer weights bounded by `weight_bound` and `theta >= 1`.

  Weight vectors are tried in increasing order of their largest weight, so
  a positive certificate minimises the largest weight. Variables are first
  ordered by how strongly each one drives the function; a threshold
  function always admits weights that respect that order, which restricts
  the search to nonincreasing weight sequences.
*/
separability_certificate is_positive_threshold( truth_table const& tt, int weight_bound = default_weight_bound );

struct oracle_entry
{
  std::uint64_t mask;
  std::vector<int> weights;
  int threshold;
};

/*! \brief The positive threshold functions of one arity with certificates. */
struct oracle_table
{
  unsigned arity = 1u;
  int weight_bound = default_weight_bound;
  std::uint64_t monotone_count = 0u;
  /* ascending by mask; constant TRUE is never present */
  std::vector<oracle_entry> entries;

  function_set capacity() const;

  /*! Largest certified weight over all entries: the smallest LTU synapse
      budget that reaches every function in the table. */
  unsigned required_ltu_budget() const;
};

oracle_table build_oracle( unsigned arity, unsigned workers = 1u, int weight_bound = default_weight_bound );

/*! \brief Positive threshold functions other than constant TRUE. */
function_set oracle_capacity( unsigned arity, unsigned workers = 1u );

/*! \brief Loads `oracle_n<arity>.jsonl` from `cache_dir`, rebuilding and
           rewriting it when absent, unreadable, or failing its checksum. */
oracle_table load_or_build_oracle( unsigned arity, std::filesystem::path const& cache_dir, unsigned workers = 1u,
                                   int weight_bound = default_weight_bound );

void write_oracle_cache( oracle_table const& table, std::filesystem::path const& file );

/*! \brief Returns nullopt when the file is missing or fails validation. */
std::optional<oracle_table> read_oracle_cache( std::filesystem::path const& file, unsigned arity,
                                               int weight_bound = default_weight_bound );

} // namespace nltu

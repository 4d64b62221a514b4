/*!
  \file truth_table.hpp
  \brief Single-word truth tables for Boolean functions of up to six inputs

  Bit `p` of the mask is the output on the assignment whose variable `i`
  equals bit `i` of `p`, so variable 0 is the least significant bit of the
  assignment index.
*/

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace nltu
{

inline constexpr unsigned max_arity = 6u;

/*! \brief Raised when a caller breaks an operation's precondition. */
class contract_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief A 0/1 input assignment, one entry per variable. */
using assignment = std::span<const std::uint8_t>;

inline constexpr std::uint32_t num_assignments( unsigned arity )
{
  return 1u << arity;
}

/*! \brief Mask with the low `2^arity` bits set. */
inline constexpr std::uint64_t full_mask( unsigned arity )
{
  return arity >= max_arity ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << num_assignments( arity ) ) - 1u;
}

/*! \brief Packs an assignment into its position index. */
std::uint32_t assignment_index( assignment values );

/*! \brief Expands a position index into an assignment of `arity` bits. */
std::vector<std::uint8_t> assignment_bits( std::uint32_t index, unsigned arity );

class truth_table
{
public:
  /*! Throws `contract_error` if `arity` is outside 1..6 or `mask` has bits
      beyond position `2^arity - 1`. */
  truth_table( unsigned arity, std::uint64_t mask );

  static truth_table constant_false( unsigned arity ) { return { arity, 0u }; }
  static truth_table constant_true( unsigned arity ) { return { arity, full_mask( arity ) }; }

  unsigned arity() const noexcept { return arity_; }
  std::uint64_t mask() const noexcept { return mask_; }

  bool at( std::uint32_t index ) const noexcept { return ( mask_ >> index ) & 1u; }

  friend bool operator==( truth_table const&, truth_table const& ) = default;

private:
  unsigned arity_;
  std::uint64_t mask_;
};

/*! \brief Output of `tt` on `values`; throws on arity mismatch. */
bool evaluate( truth_table const& tt, assignment values );

/*! \brief True iff `p ⊆ q` implies `f(p) <= f(q)` for all assignments. */
bool is_monotone( truth_table const& tt );

/*! \brief Lowercase hex with `0x` prefix, e.g. `0xe0`. */
std::string to_hex( std::uint64_t mask );

/*! \brief Parses the form written by `to_hex`; throws `std::invalid_argument`. */
std::uint64_t parse_hex( std::string_view text );

/*! \brief Deduplicating collection of truth tables sharing one arity.

  Membership is stored as raw masks. Parallel producers build private sets
  and combine them with `merge`, which is a plain set union and therefore
  independent of merge order.
*/
class function_set
{
public:
  explicit function_set( unsigned arity );

  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool empty() const noexcept { return masks_.empty(); }

  /*! Returns true iff the table was absent. Throws on arity mismatch. */
  bool insert( truth_table const& tt );

  /*! Unchecked insert for hot loops; `mask` must be valid for `arity()`. */
  bool insert_mask( std::uint64_t mask ) { return masks_.insert( mask ).second; }

  bool contains( std::uint64_t mask ) const { return masks_.count( mask ) != 0u; }
  bool contains( truth_table const& tt ) const;

  /*! True iff every member of `other` is a member of this set. */
  bool includes( function_set const& other ) const;

  void merge( function_set const& other );

  /*! Members in ascending mask order. */
  std::vector<std::uint64_t> sorted_masks() const;

  void reserve( std::size_t count ) { masks_.reserve( count ); }

  friend bool operator==( function_set const& a, function_set const& b )
  {
    return a.arity_ == b.arity_ && a.masks_ == b.masks_;
  }

private:
  unsigned arity_;
  std::unordered_set<std::uint64_t> masks_;
};

} // namespace nltu

/*!
  \file models.hpp
  \brief Integer-parameter neuron models: the linear threshold unit (LTU)
         and the non-linear threshold unit (nLTU)

  Both models use nonnegative integer weights counted in synapses and fire
  iff their somatic sum reaches a threshold `theta >= 1`. The nLTU first
  groups synapses into dendritic subunits; each subunit's drive is clipped
  at its saturation level before the somatic sum:

      a_j = min( sum_i w[j][i] * x_i, s_j ),   fires iff sum_j a_j >= theta
*/

#pragma once

#include "truth_table.hpp"

#include <json.hpp>

#include <vector>

namespace nltu
{

struct ltu_params
{
  std::vector<int> weights;
  int threshold = 1;

  unsigned arity() const noexcept { return static_cast<unsigned>( weights.size() ); }

  /*! Throws `contract_error` on negative weights or `threshold < 1`. */
  void validate() const;

  friend bool operator==( ltu_params const&, ltu_params const& ) = default;
};

struct nltu_params
{
  /* subunit_weights[j][i]: synapses from input i onto subunit j */
  std::vector<std::vector<int>> subunit_weights;
  std::vector<int> saturations;
  int threshold = 1;

  unsigned arity() const noexcept
  {
    return subunit_weights.empty() ? 0u : static_cast<unsigned>( subunit_weights.front().size() );
  }
  unsigned num_subunits() const noexcept { return static_cast<unsigned>( subunit_weights.size() ); }

  /*! Throws `contract_error` unless there is at least one subunit, rows are
      rectangular, weights are nonnegative, and saturations and threshold
      are at least 1. */
  void validate() const;

  friend bool operator==( nltu_params const&, nltu_params const& ) = default;
};

bool ltu_output( ltu_params const& params, assignment values );
bool nltu_output( nltu_params const& params, assignment values );

/*! \brief Function computed by an LTU, one bit per input assignment. */
truth_table ltu_truth_table( ltu_params const& params );

/*! \brief Function computed by an nLTU, one bit per input assignment. */
truth_table nltu_truth_table( nltu_params const& params );

/* {"model": "ltu", "n": 3, "weights": [1,1,2], "theta": 3} and
   {"model": "nltu", "n": 3, "subunit_weights": [[..]], "saturations": [..], "theta": 2} */
void to_json( nlohmann::json& j, ltu_params const& params );
void to_json( nlohmann::json& j, nltu_params const& params );
void from_json( nlohmann::json const& j, ltu_params& params );
void from_json( nlohmann::json const& j, nltu_params& params );

} // namespace nltu

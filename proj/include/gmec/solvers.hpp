#pragma once

// Name-based dispatch over every solver, shared by the CLI and the bench runner.

#include "length_class.hpp"
#include "oracle.hpp"

namespace gmec {

struct SolveRequest
{
    std::string  algo = "general";
    Precision    precision;
    OracleBudget budget;
    int          root = 0; // rooted: root column
    int          r    = -1;// exact-fixed: rows on sigma
};

inline const std::vector<std::string> & algorithm_names ()
{
    static const std::vector<std::string> names{ "exact-bipartition", "exact-strings", "exact-fixed", "swc",
                                                 "dp-single",         "dp-pair",       "rooted",      "subinterval-free",
                                                 "general" };
    return names;
}

inline bool is_algorithm ( std::string_view name )
{
    const auto & v = algorithm_names();
    return std::find( v.begin(), v.end(), name ) != v.end();
}

inline SolutionPair run_algorithm ( const FragmentMatrix & M, const SolveRequest & q )
{
    const auto & a = q.algo;
    SolutionPair s;
    if ( a == "exact-bipartition" )
        s = exact_bipartition( M, q.budget );
    else if ( a == "exact-strings" )
        s = exact_strings( M, q.budget );
    else if ( a == "exact-fixed" )
    {
        if ( q.r < 0 )
            throw MecError( "exact-fixed needs --r" );
        s = exact_fixed_count( M, q.r, q.budget );
    }
    else if ( a == "swc" )
        s = solve_swc( M, q.precision );
    else if ( a == "dp-single" )
        s = solve_dp_single( M, q.precision );
    else if ( a == "dp-pair" )
        s = solve_dp_pair( M, q.precision );
    else if ( a == "rooted" )
    {
        if ( q.root < 1 )
            throw MecError( "rooted needs --root" );
        s = solve_rooted( M, q.root, q.precision );
    }
    else if ( a == "subinterval-free" )
        s = solve_subinterval_free( M, q.precision );
    else if ( a == "general" )
        s = solve_general( M, q.precision );
    else
        throw MecError( "unknown algorithm '" + a + "'" );

    // never trust a solver's own counter
    s.cost = cost_fixed( M, s.sigma, s.sigma_prime, s.assignment );
    return s;
}

/// Compact description of the precision knobs, for reports.
inline std::string describe ( const Precision & p )
{
    return "eps=" + std::to_string( p.eps.num ) + "/" + std::to_string( p.eps.den ) + ";K=" + std::to_string( p.chunks_per_range )
           + ";S=" + std::to_string( p.rows_per_chunk ) + ";trials=" + std::to_string( p.selection_trials )
           + ";seed=" + std::to_string( p.seed );
}

}// namespace gmec

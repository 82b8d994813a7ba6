#pragma once

// Exact brute-force solvers. They exist for ground truth, not speed.

#include <bit>
#include <cstdint>
#include <limits>

#include "core.hpp"

namespace gmec {

struct OracleBudget
{
    int max_rows_for_bipartition = 20;
    int max_cols_for_strings     = 10;

    void check () const
    {
        if ( max_rows_for_bipartition < 1 || max_cols_for_strings < 1 )
            throw MecError( "oracle budget must be positive" );
    }
};

class BudgetExceeded : public MecError
{
public:
    using MecError::MecError;
};

namespace detail {

// rows packed into 64-bit masks; column j maps to bit (m - j) so that integer
// order of a packed string equals lexicographic order of its text
struct PackedRows
{
    int                        m = 0;
    std::vector<std::uint64_t> care;
    std::vector<std::uint64_t> value;

    explicit PackedRows ( const FragmentMatrix & M )
        : m( M.m() )
    {
        for ( const auto & r : M.rows() )
        {
            std::uint64_t c = 0, v = 0;
            for ( int col = r.start; col <= r.end(); ++col )
            {
                const auto bit = std::uint64_t( 1 ) << ( m - col );
                c |= bit;
                if ( r.bits[std::size_t( col - r.start )] == '1' )
                    v |= bit;
            }
            care.push_back( c );
            value.push_back( v );
        }
    }

    long dist ( std::size_t i, std::uint64_t s ) const noexcept
    {
        return std::popcount( ( value[i] ^ s ) & care[i] );
    }

    BitString unpack ( std::uint64_t s ) const
    {
        BitString out( std::size_t( m ), '0' );
        for ( int col = 1; col <= m; ++col )
            if ( s >> ( m - col ) & 1 )
                out[std::size_t( col - 1 )] = '1';
        return out;
    }
};

// majority completion for one side over a packed row subset given by `mask`
// (bit i set = row i on this side); ties and empty columns give 1
inline std::uint64_t packed_majority ( const PackedRows & P, std::uint64_t side_mask, std::span<long> balance )
{
    std::fill( balance.begin(), balance.end(), 0L );
    for ( std::size_t i = 0; i < P.care.size(); ++i )
    {
        if ( !( side_mask >> i & 1 ) )
            continue;
        for ( std::uint64_t c = P.care[i]; c; c &= c - 1 )
        {
            const int b = std::countr_zero( c );
            balance[std::size_t( b )] += ( P.value[i] >> b & 1 ) ? 1 : -1;
        }
    }
    std::uint64_t s = 0;
    for ( int b = 0; b < P.m; ++b )
        if ( balance[std::size_t( b )] >= 0 )
            s |= std::uint64_t( 1 ) << b;
    return s;
}

struct PackedCandidate
{
    long          cost = std::numeric_limits<long>::max();
    std::uint64_t sigma = 0, sigma_prime = 0;
    std::uint64_t a_mask = 0;// bit i set = row i labelled A
    bool          found  = false;
};

// order among equal-cost candidates: (sigma, sigma', labels) lexicographic,
// where label text compares 'A' < 'B', so more leading A's sort first
inline bool packed_better ( const PackedCandidate & x, const PackedCandidate & y, int n )
{
    if ( !y.found )
        return true;
    if ( x.cost != y.cost )
        return x.cost < y.cost;
    if ( x.sigma != y.sigma )
        return x.sigma < y.sigma;
    if ( x.sigma_prime != y.sigma_prime )
        return x.sigma_prime < y.sigma_prime;
    for ( int i = 0; i < n; ++i )
    {
        const bool xa = x.a_mask >> i & 1, ya = y.a_mask >> i & 1;
        if ( xa != ya )
            return xa;
    }
    return false;
}

inline SolutionPair to_solution ( const PackedRows & P, const PackedCandidate & c, int n )
{
    SolutionPair sol;
    sol.sigma       = P.unpack( c.sigma );
    sol.sigma_prime = P.unpack( c.sigma_prime );
    sol.assignment.resize( std::size_t( n ) );
    for ( int i = 0; i < n; ++i )
        sol.assignment[std::size_t( i )] = ( c.a_mask >> i & 1 ) ? Label::A : Label::B;
    sol.cost = c.cost;
    return sol;
}

inline PackedCandidate evaluate_bipartition ( const PackedRows & P, std::uint64_t a_mask, int n, std::span<long> balance )
{
    const std::uint64_t all = n == 64 ? ~std::uint64_t( 0 ) : ( std::uint64_t( 1 ) << n ) - 1;

    PackedCandidate c;
    c.found       = true;
    c.a_mask      = a_mask;
    c.sigma       = packed_majority( P, a_mask, balance );
    c.sigma_prime = packed_majority( P, all & ~a_mask, balance );
    c.cost        = 0;
    for ( int i = 0; i < n; ++i )
        c.cost += P.dist( std::size_t( i ), ( a_mask >> i & 1 ) ? c.sigma : c.sigma_prime );
    return c;
}

inline void require_packable ( const FragmentMatrix & M )
{
    if ( M.m() > 63 )
        throw BudgetExceeded( "oracle: more than 63 columns" );
}

}// namespace detail

/// Optimum over all row bipartitions with row 1 fixed to A.
inline SolutionPair exact_bipartition ( const FragmentMatrix & M, const OracleBudget & budget = {} )
{
    budget.check();
    if ( M.n() > budget.max_rows_for_bipartition || M.n() > 62 )
        throw BudgetExceeded( "exact_bipartition: n=" + std::to_string( M.n() ) + " exceeds budget" );
    detail::require_packable( M );

    const int            n = M.n();
    detail::PackedRows   P( M );
    std::vector<long>    balance( std::size_t( M.m() ) );
    detail::PackedCandidate best;

    // row 1 (bit 0) always on A
    const std::uint64_t free_rows = std::uint64_t( 1 ) << ( n - 1 );
    for ( std::uint64_t rest = 0; rest < free_rows; ++rest )
    {
        const auto cand = detail::evaluate_bipartition( P, 1 | ( rest << 1 ), n, balance );
        if ( detail::packed_better( cand, best, n ) )
            best = cand;
    }
    return detail::to_solution( P, best, n );
}

/// Optimum over all string pairs sigma <= sigma' (lexicographic).
inline SolutionPair exact_strings ( const FragmentMatrix & M, const OracleBudget & budget = {} )
{
    budget.check();
    if ( M.m() > budget.max_cols_for_strings || M.m() > 31 )
        throw BudgetExceeded( "exact_strings: m=" + std::to_string( M.m() ) + " exceeds budget" );

    const int          n = M.n();
    detail::PackedRows P( M );
    const std::uint64_t count = std::uint64_t( 1 ) << M.m();

    long          best_cost = std::numeric_limits<long>::max();
    std::uint64_t best_s = 0, best_t = 0;
    // enumeration order is lexicographic in (sigma, sigma'), so a strict
    // improvement test keeps the lexicographically smallest optimum
    for ( std::uint64_t s = 0; s < count; ++s )
    {
        for ( std::uint64_t t = s; t < count; ++t )
        {
            long c = 0;
            for ( std::size_t i = 0; i < std::size_t( n ) && c < best_cost; ++i )
                c += std::min( P.dist( i, s ), P.dist( i, t ) );
            if ( c < best_cost )
            {
                best_cost = c;
                best_s    = s;
                best_t    = t;
            }
        }
    }
    return evaluate( M, P.unpack( best_s ), P.unpack( best_t ) );
}

/// Number of r-subsets of n rows, saturating at 2^62.
inline std::uint64_t binomial ( int n, int r )
{
    if ( r < 0 || r > n )
        return 0;
    r = std::min( r, n - r );
    unsigned __int128 c = 1;
    for ( int k = 1; k <= r; ++k )
    {
        c = c * unsigned( n - r + k ) / unsigned( k );
        if ( c > ( unsigned __int128 )( std::uint64_t( 1 ) << 62 ) )
            return std::uint64_t( 1 ) << 62;
    }
    return std::uint64_t( c );
}

/// Best bipartition with exactly r rows labelled A. Accepts n beyond the row
/// budget when the number of r-subsets stays within 2^budget.
inline SolutionPair exact_fixed_count ( const FragmentMatrix & M, int r, const OracleBudget & budget = {} )
{
    budget.check();
    const int n = M.n();
    if ( r < 0 || r > n )
        throw MecError( "exact_fixed_count: r=" + std::to_string( r ) + " out of range" );
    const std::uint64_t limit = std::uint64_t( 1 ) << std::min( budget.max_rows_for_bipartition, 40 );
    if ( n > 62 || ( n > budget.max_rows_for_bipartition && binomial( n, r ) > limit ) )
        throw BudgetExceeded( "exact_fixed_count: n=" + std::to_string( n ) + ", r=" + std::to_string( r ) + " exceeds budget" );
    detail::require_packable( M );

    detail::PackedRows      P( M );
    std::vector<long>       balance( std::size_t( M.m() ) );
    detail::PackedCandidate best;

    if ( r == 0 )
        return detail::to_solution( P, detail::evaluate_bipartition( P, 0, n, balance ), n );

    // Gosper's hack over r-subsets of n bits
    const std::uint64_t end = std::uint64_t( 1 ) << n;
    for ( std::uint64_t a = ( std::uint64_t( 1 ) << r ) - 1; a < end; )
    {
        const auto cand = detail::evaluate_bipartition( P, a, n, balance );
        if ( detail::packed_better( cand, best, n ) )
            best = cand;
        const std::uint64_t low  = a & ( ~a + 1 );
        const std::uint64_t ripple = a + low;
        a = ( ( ( ripple ^ a ) >> 2 ) / low ) | ripple;
    }
    return detail::to_solution( P, best, n );
}

}// namespace gmec

#pragma once

// Sampling-based solver for instances whose first column is fully binary:
// trisections, subdivisions, weighted majority votes and the selection search.
//
// Row indices are 0-based; a RowRange is half-open [first, last).

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "core.hpp"
#include "oracle.hpp"

namespace gmec {

/// Rational precision parameter in (0, 1/2].
struct Epsilon
{
    int num = 1;
    int den = 2;

    void check () const
    {
        if ( num <= 0 || den <= 0 || 2 * num > den )
            throw MecError( "epsilon must lie in (0, 1/2]" );
    }

    double value () const noexcept { return double( num ) / double( den ); }

    /// floor((1 - eps) * r)
    long upper_count ( long r ) const noexcept { return ( r * ( den - num ) ) / den; }

    /// ceil((eps - eps^2) * r)
    long lower_count ( long r ) const noexcept
    {
        const long q = long( den ) * den;
        const long p = long( num ) * ( den - num ) * r;
        return ( p + q - 1 ) / q;
    }

    /// 1/eps^2 rounded down; dominance factor.
    long inverse_square () const noexcept { return ( long( den ) * den ) / ( long( num ) * num ); }

    bool operator== ( const Epsilon & ) const = default;
};

struct Precision
{
    Epsilon       eps;
    int           chunks_per_range   = 2;   // K
    int           rows_per_chunk     = 2;   // S
    int           selection_trials   = 200;
    std::uint64_t exhaustive_limit   = 4096;
    int           small_r_cutoff     = 4;
    int           local_passes       = 2;   // selection-improvement sweeps per trial
    std::uint64_t seed               = 1;

    // dynamic programs
    int range_selections  = 6;    // candidate selections kept per row range
    int max_boundaries    = 32;   // all boundaries up to this many rows, grid beyond
    int max_joint_states  = 200000;

    // rooted / subinterval-free / general solvers
    int center_candidates  = 24;
    int chunk_multiplier   = 1;
    int max_interval_width = 8;
    int chain_candidates   = 8;

    void check () const
    {
        eps.check();
        if ( chunks_per_range < 1 || rows_per_chunk < 1 || selection_trials < 1 )
            throw MecError( "precision: K, S and trials must be positive" );
        if ( small_r_cutoff < 0 || range_selections < 1 || center_candidates < 1 || chunk_multiplier < 1
             || max_interval_width < 0 || chain_candidates < 1 )
            throw MecError( "precision: invalid solver parameter" );
    }
};

class SmallCaseError : public MecError
{
public:
    using MecError::MecError;
};

struct RowRange
{
    int first = 0;
    int last  = 0;

    int  size () const noexcept { return last - first; }
    bool empty () const noexcept { return last <= first; }
    bool contains ( int i ) const noexcept { return i >= first && i < last; }

    bool operator== ( const RowRange & ) const = default;
    auto operator<=> ( const RowRange & ) const = default;
};

struct Trisection
{
    RowRange         U, L, X;
    Label            side = Label::A;
    std::vector<int> reference_rows;// rows of the reference assignment on `side`, ascending
};

struct Subdivision
{
    std::vector<RowRange> upper;
    std::vector<RowRange> lower;
};

/// Per-chunk multisets of selected rows, parallel to a Subdivision.
struct Selection
{
    std::vector<std::vector<int>> upper;
    std::vector<std::vector<int>> lower;

    std::vector<int> rows () const
    {
        std::vector<int> out;
        for ( const auto * part : { &upper, &lower } )
            for ( const auto & c : *part )
                out.insert( out.end(), c.begin(), c.end() );
        std::sort( out.begin(), out.end() );
        out.erase( std::unique( out.begin(), out.end() ), out.end() );
        return out;
    }

    bool operator== ( const Selection & ) const = default;
};

inline bool disjoint ( const Selection & x, const Selection & y )
{
    const auto a = x.rows(), b = y.rows();
    std::vector<int> common;
    std::set_intersection( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( common ) );
    return common.empty();
}

//
// trisections and subdivisions
//

inline Trisection build_trisection ( const FragmentMatrix & M, const Assignment & reference, Label side, Epsilon eps )
{
    eps.check();
    if ( int( reference.size() ) != M.n() )
        throw MecError( "reference assignment length must equal n" );

    Trisection t;
    t.side = side;
    for ( int i = 0; i < M.n(); ++i )
        if ( reference[std::size_t( i )] == side )
            t.reference_rows.push_back( i );

    const long r      = long( t.reference_rows.size() );
    const long upper  = eps.upper_count( r );
    const long lower  = std::min( eps.lower_count( r ), r - upper );
    if ( upper < 1 || lower < 1 )
        throw SmallCaseError( "too few reference rows (" + std::to_string( r ) + ") for a trisection" );

    const auto & ref = t.reference_rows;
    // L starts at the first reference row past U's quota, X at the first past L's
    const int l_start = ref[std::size_t( upper )];
    const int x_start = upper + lower < r ? ref[std::size_t( upper + lower )] : M.n();
    t.U = { 0, l_start };
    t.L = { l_start, x_start };
    t.X = { x_start, M.n() };
    return t;
}

/// Split `range` into at most k chunks with reference counts differing by at most one.
/// Every chunk except possibly the first starts at a reference row.
inline std::vector<RowRange> split_range ( RowRange range, std::span<const int> reference_rows, int k )
{
    std::vector<int> inside;
    for ( int i : reference_rows )
        if ( range.contains( i ) )
            inside.push_back( i );

    const int count = int( inside.size() );
    k               = std::max( 1, std::min( k, count ) );
    std::vector<RowRange> chunks;
    if ( count == 0 )
    {
        chunks.push_back( range );
        return chunks;
    }

    int taken = 0, begin = range.first;
    for ( int c = 0; c < k; ++c )
    {
        const int quota = count / k + ( c < count % k ? 1 : 0 );
        taken += quota;
        const int end = taken < count ? inside[std::size_t( taken )] : range.last;
        chunks.push_back( { begin, end } );
        begin = end;
    }
    return chunks;
}

/// Chunks balanced by total rows (no reference assignment available).
inline std::vector<RowRange> split_range ( RowRange range, int k )
{
    std::vector<int> all( std::size_t( std::max( 0, range.size() ) ) );
    std::iota( all.begin(), all.end(), range.first );
    return split_range( range, all, k );
}

inline Subdivision build_subdivision ( const Trisection & t, int k )
{
    return Subdivision{ split_range( t.U, t.reference_rows, k ), split_range( t.L, t.reference_rows, k ) };
}

//
// majority votes
//

/// Weighted vote: U entries count 1/eps times as much as L entries.
/// Returns 1 when the weighted sum is >= 0.
inline int weighted_majority ( std::span<const Symbol> upper, std::span<const Symbol> lower, Epsilon eps )
{
    // nu * num = sum_U * den + sum_L * num   (1/eps = den/num)
    auto remap = [] ( Symbol s ) -> long { return s == Symbol::One ? 1 : s == Symbol::Zero ? -1 : 0; };
    long su = 0, sl = 0;
    for ( auto s : upper )
        su += remap( s );
    for ( auto s : lower )
        sl += remap( s );
    return su * eps.den + sl * eps.num >= 0 ? 1 : 0;
}

/// Entries of selected rows at `col`, concatenated over chunks.
inline std::vector<Symbol> column_entries ( const FragmentMatrix & M, const std::vector<std::vector<int>> & chunks, int col )
{
    std::vector<Symbol> out;
    for ( const auto & c : chunks )
        for ( int i : c )
            out.push_back( M.at( i, col ) );
    return out;
}

inline int weighted_majority ( const FragmentMatrix & M, int col, const Selection & sel, Epsilon eps )
{
    const auto u = column_entries( M, sel.upper, col );
    const auto l = column_entries( M, sel.lower, col );
    return weighted_majority( u, l, eps );
}

struct ChunkVote
{
    long                weight = 1;// reference rows in the chunk, r(c)
    std::vector<Symbol> entries;   // entries of the chunk's selected rows
};

/// rho = sum over chunks of r(c) * remapped entries; returns 1 when rho >= 0.
inline int generalized_majority ( std::span<const ChunkVote> chunks )
{
    long rho = 0;
    for ( const auto & c : chunks )
        for ( auto s : c.entries )
            rho += c.weight * ( s == Symbol::One ? 1 : s == Symbol::Zero ? -1 : 0 );
    return rho >= 0 ? 1 : 0;
}

/// Vote columns [first_col, last_col] into `out` (a length-m string).
inline void vote_columns ( const FragmentMatrix & M, const Selection & sel, Epsilon eps, int first_col, int last_col, BitString & out )
{
    for ( int col = first_col; col <= last_col; ++col )
    {
        long su = 0, sl = 0;
        for ( const auto & c : sel.upper )
            for ( int i : c )
                su += M.row( i ).signed_at( col );
        for ( const auto & c : sel.lower )
            for ( int i : c )
                sl += M.row( i ).signed_at( col );
        out[std::size_t( col - 1 )] = su * eps.den + sl * eps.num >= 0 ? '1' : '0';
    }
}

/// The r rows among [0, scope) with smallest dist(sigma) - dist(sigma') go to A
/// (ties by lower row index); rows from `scope` on get the default assignment.
inline SolutionPair assign_r_smallest ( const FragmentMatrix & M, BitString sigma, BitString sigma_prime, int r, int scope )
{
    scope = std::min( scope, M.n() );
    std::vector<std::pair<long, int>> d;
    d.reserve( std::size_t( scope ) );
    for ( int i = 0; i < scope; ++i )
        d.emplace_back( row_dist( M.row( i ), sigma ) - row_dist( M.row( i ), sigma_prime ), i );
    std::sort( d.begin(), d.end() );

    Assignment a( std::size_t( M.n() ), Label::B );
    for ( int k = 0; k < std::min( r, scope ); ++k )
        a[std::size_t( d[std::size_t( k )].second )] = Label::A;
    for ( int i = scope; i < M.n(); ++i )
        a[std::size_t( i )] = row_dist( M.row( i ), sigma ) <= row_dist( M.row( i ), sigma_prime ) ? Label::A : Label::B;

    SolutionPair sol{ std::move( sigma ), std::move( sigma_prime ), std::move( a ), 0 };
    sol.cost = cost_fixed( M, sol.sigma, sol.sigma_prime, sol.assignment );
    return sol;
}

inline void check_selection ( const Subdivision & sub, const Selection & sel )
{
    auto check = [] ( const std::vector<RowRange> & chunks, const std::vector<std::vector<int>> & picks ) {
        if ( chunks.size() != picks.size() )
            throw MecError( "selection does not match the subdivision" );
        for ( std::size_t c = 0; c < chunks.size(); ++c )
            for ( int i : picks[c] )
                if ( !chunks[c].contains( i ) )
                    throw MecError( "selected row " + std::to_string( i ) + " lies outside its chunk" );
    };
    check( sub.upper, sel.upper );
    check( sub.lower, sel.lower );
}

/// One vote-and-assign pass with fixed selections.
inline SolutionPair swc_pass ( const FragmentMatrix & M, const Selection & sel_a, const Selection & sel_b, int r, Epsilon eps,
                               int scope )
{
    BitString sigma( std::size_t( M.m() ), '1' ), sigma_prime( std::size_t( M.m() ), '1' );
    vote_columns( M, sel_a, eps, 1, M.m(), sigma );
    vote_columns( M, sel_b, eps, 1, M.m(), sigma_prime );
    return assign_r_smallest( M, std::move( sigma ), std::move( sigma_prime ), r, scope );
}

//
// selection search
//

namespace detail {

/// All multisets of size s over [range.first, range.last), ascending.
inline void multisets ( RowRange range, int s, std::vector<std::vector<int>> & out, std::size_t cap )
{
    std::vector<int> cur;
    std::function<void( int )> rec = [&] ( int from ) {
        if ( out.size() >= cap )
            return;
        if ( int( cur.size() ) == s )
        {
            out.push_back( cur );
            return;
        }
        for ( int i = from; i < range.last; ++i )
        {
            cur.push_back( i );
            rec( i );
            cur.pop_back();
        }
    };
    rec( range.first );
}

inline std::uint64_t saturating_mul ( std::uint64_t a, std::uint64_t b )
{
    if ( a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a )
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

inline std::uint64_t multiset_count ( int size, int s )
{
    // C(size + s - 1, s)
    return binomial( size + s - 1, s );
}

inline std::uint64_t selection_space ( const Subdivision & sub, int s )
{
    std::uint64_t total = 1;
    for ( const auto * part : { &sub.upper, &sub.lower } )
        for ( const auto & c : *part )
            total = saturating_mul( total, multiset_count( c.size(), s ) );
    return total;
}

/// Draw S rows per chunk uniformly with repetition, avoiding `banned`.
/// Returns false when some chunk has no admissible row.
template < typename Rng >
bool draw_selection ( const Subdivision & sub, int s, const std::vector<char> & banned, Rng & rng, Selection & out )
{
    auto draw = [&] ( const std::vector<RowRange> & chunks, std::vector<std::vector<int>> & picks ) {
        picks.assign( chunks.size(), {} );
        for ( std::size_t c = 0; c < chunks.size(); ++c )
        {
            std::vector<int> pool;
            for ( int i = chunks[c].first; i < chunks[c].last; ++i )
                if ( !banned[std::size_t( i )] )
                    pool.push_back( i );
            if ( pool.empty() )
                return false;
            std::uniform_int_distribution<std::size_t> pick( 0, pool.size() - 1 );
            for ( int k = 0; k < s; ++k )
                picks[c].push_back( pool[pick( rng )] );
            std::sort( picks[c].begin(), picks[c].end() );
        }
        return true;
    };
    return draw( sub.upper, out.upper ) && draw( sub.lower, out.lower );
}

inline std::vector<char> mark_rows ( int n, const Selection & sel )
{
    std::vector<char> used( std::size_t( n ), 0 );
    for ( int i : sel.rows() )
        used[std::size_t( i )] = 1;
    return used;
}

struct SearchResult
{
    SolutionPair solution;
    Selection    sel_a, sel_b;
};

inline bool better_search ( const SolutionPair & a, const SolutionPair & b ) { return better( a, b ); }

/// Replace single selected rows while the pass cost drops.
inline void improve_selection ( const FragmentMatrix & M, const Subdivision & sub_a, const Subdivision & sub_b, int r, Epsilon eps,
                                int scope, int passes, SearchResult & cur )
{
    for ( int pass = 0; pass < passes; ++pass )
    {
        bool improved = false;
        for ( int side = 0; side < 2; ++side )
        {
            auto &       sel   = side == 0 ? cur.sel_a : cur.sel_b;
            const auto & other = side == 0 ? cur.sel_b : cur.sel_a;
            const auto & sub   = side == 0 ? sub_a : sub_b;
            for ( int part = 0; part < 2; ++part )
            {
                auto &       picks  = part == 0 ? sel.upper : sel.lower;
                const auto & chunks = part == 0 ? sub.upper : sub.lower;
                for ( std::size_t c = 0; c < chunks.size(); ++c )
                {
                    for ( std::size_t slot = 0; slot < picks[c].size(); ++slot )
                    {
                        const auto banned = mark_rows( M.n(), other );
                        for ( int cand = chunks[c].first; cand < chunks[c].last; ++cand )
                        {
                            if ( cand == picks[c][slot] || banned[std::size_t( cand )] )
                                continue;
                            const int prev  = picks[c][slot];
                            picks[c][slot]  = cand;
                            auto trial      = swc_pass( M, cur.sel_a, cur.sel_b, r, eps, scope );
                            if ( trial.cost < cur.solution.cost )
                            {
                                cur.solution = std::move( trial );
                                improved     = true;
                            }
                            else
                                picks[c][slot] = prev;
                        }
                    }
                    std::sort( picks[c].begin(), picks[c].end() );
                }
            }
        }
        if ( !improved )
            break;
    }
}

inline SearchResult search_selections ( const FragmentMatrix & M, const Subdivision & sub_a, const Subdivision & sub_b, int r,
                                        const Precision & prec, int scope, std::uint64_t salt )
{
    const int     s     = prec.rows_per_chunk;
    const auto    space = saturating_mul( selection_space( sub_a, s ), selection_space( sub_b, s ) );
    SearchResult  best;
    bool          found = false;

    auto consider = [&] ( const Selection & a, const Selection & b ) {
        auto sol = swc_pass( M, a, b, r, prec.eps, scope );
        if ( !found || better_search( sol, best.solution ) )
        {
            best  = SearchResult{ std::move( sol ), a, b };
            found = true;
        }
    };

    if ( space <= prec.exhaustive_limit )
    {
        // mixed-radix walk over per-chunk multisets of both sides
        std::vector<const RowRange *> chunks;
        for ( const auto * sub : { &sub_a, &sub_b } )
        {
            for ( const auto & c : sub->upper )
                chunks.push_back( &c );
            for ( const auto & c : sub->lower )
                chunks.push_back( &c );
        }
        std::vector<std::vector<std::vector<int>>> options( chunks.size() );
        for ( std::size_t k = 0; k < chunks.size(); ++k )
            multisets( *chunks[k], s, options[k], std::size_t( prec.exhaustive_limit ) + 1 );

        std::vector<std::size_t> digit( chunks.size(), 0 );
        const std::size_t        nua = sub_a.upper.size(), nla = sub_a.lower.size(), nub = sub_b.upper.size();
        for ( ;; )
        {
            Selection a, b;
            for ( std::size_t k = 0; k < chunks.size(); ++k )
            {
                const auto & pick = options[k][digit[k]];
                if ( k < nua )
                    a.upper.push_back( pick );
                else if ( k < nua + nla )
                    a.lower.push_back( pick );
                else if ( k < nua + nla + nub )
                    b.upper.push_back( pick );
                else
                    b.lower.push_back( pick );
            }
            if ( disjoint( a, b ) )
                consider( a, b );

            std::size_t k = 0;
            while ( k < digit.size() && ++digit[k] == options[k].size() )
                digit[k++] = 0;
            if ( k == digit.size() )
                break;
        }
    }
    else
    {
        std::mt19937_64 rng( prec.seed * 0x9E3779B97F4A7C15ULL + salt );
        for ( int t = 0; t < prec.selection_trials; ++t )
        {
            Selection a, b;
            if ( !draw_selection( sub_a, s, std::vector<char>( std::size_t( M.n() ), 0 ), rng, a ) )
                break;
            if ( !draw_selection( sub_b, s, mark_rows( M.n(), a ), rng, b ) )
                continue;
            SearchResult cur{ swc_pass( M, a, b, r, prec.eps, scope ), a, b };
            improve_selection( M, sub_a, sub_b, r, prec.eps, scope, prec.local_passes, cur );
            if ( !found || better_search( cur.solution, best.solution ) )
            {
                best  = std::move( cur );
                found = true;
            }
        }
    }

    if ( !found )
        throw MecError( "swc: no admissible pair of disjoint selections" );
    return best;
}

}// namespace detail

/// Algorithm SWC: vote with the given selections, or search selections when absent.
inline SolutionPair swc ( const FragmentMatrix & M, const Subdivision & sub_a, const Subdivision & sub_b, int r, int r_prime,
                          const Precision & prec, const std::optional<std::pair<Selection, Selection>> & fixed = std::nullopt )
{
    prec.check();
    if ( r < 0 || r_prime < 0 || r + r_prime != M.n() )
        throw MecError( "swc: r + r' must equal n" );
    if ( !is_swc( M ) )
        throw MecError( "swc: column 1 must be fully binary" );

    if ( fixed )
    {
        check_selection( sub_a, fixed->first );
        check_selection( sub_b, fixed->second );
        if ( !disjoint( fixed->first, fixed->second ) )
            throw MecError( "swc: selections of the two sides must be disjoint" );
        return swc_pass( M, fixed->first, fixed->second, r, prec.eps, M.n() );
    }

    if ( std::min( r, r_prime ) <= prec.small_r_cutoff )
        throw SmallCaseError( "swc: r or r' at or below the small-case cutoff; use exact_fixed_count" );
    return detail::search_selections( M, sub_a, sub_b, r, prec, M.n(), std::uint64_t( r ) ).solution;
}

/// SWC on the U and L ranges only; rows past both trisections take the default assignment.
inline SolutionPair swc_with_reassignment ( const FragmentMatrix & M, const Trisection & ta, const Trisection & tb, const Precision & prec )
{
    prec.check();
    if ( !is_swc( M ) )
        throw MecError( "swc: column 1 must be fully binary" );
    if ( ta.side == tb.side )
        throw MecError( "swc_with_reassignment: trisections must be for opposite sides" );
    const auto & tri_a = ta.side == Label::A ? ta : tb;
    const auto & tri_b = ta.side == Label::A ? tb : ta;

    const int scope = std::max( tri_a.X.first, tri_b.X.first );
    const int r     = int( std::count_if( tri_a.reference_rows.begin(), tri_a.reference_rows.end(), [&] ( int i ) { return i < scope; } ) );
    const int r_p   = int( std::count_if( tri_b.reference_rows.begin(), tri_b.reference_rows.end(), [&] ( int i ) { return i < scope; } ) );
    if ( std::min( r, r_p ) <= prec.small_r_cutoff )
        throw SmallCaseError( "swc: r or r' at or below the small-case cutoff; use exact_fixed_count" );

    const auto sub_a = build_subdivision( tri_a, prec.chunks_per_range );
    const auto sub_b = build_subdivision( tri_b, prec.chunks_per_range );
    return detail::search_selections( M, sub_a, sub_b, r, prec, scope, std::uint64_t( r ) * 131 + 7 ).solution;
}

//
// r loop
//

/// Guesses for r: every value when n <= 64, otherwise a (1+eps)-geometric grid and its mirror.
inline std::vector<int> r_guesses ( int n, Epsilon eps )
{
    std::set<int> rs;
    if ( n <= 64 )
    {
        for ( int r = 0; r <= n; ++r )
            rs.insert( r );
    }
    else
    {
        rs.insert( 0 );
        rs.insert( n );
        for ( double x = 1; x <= n; x *= 1 + eps.value() )
        {
            const int r = int( std::ceil( x ) );
            rs.insert( std::min( r, n ) );
            rs.insert( std::max( 0, n - r ) );
        }
    }
    return { rs.begin(), rs.end() };
}

/// Exact answer for a small side, or nothing when the oracle budget does not allow it.
inline std::optional<SolutionPair> small_case ( const FragmentMatrix & M, int r )
{
    try
    {
        return exact_fixed_count( M, r );
    }
    catch ( const BudgetExceeded & )
    {
        return std::nullopt;
    }
}

/// Whole-instance SWC solver: instance-wide trisection on total rows, r loop,
/// exact delegation for small sides. Input need not be in standard ordering.
inline SolutionPair solve_swc ( const FragmentMatrix & input, const Precision & prec )
{
    prec.check();
    if ( !is_swc( input ) )
        throw MecError( "swc: column 1 must be fully binary" );

    const auto order = standard_order( input );
    const auto M     = permute_rows( input, order );
    const int  n     = M.n();

    const Assignment all_a( std::size_t( n ), Label::A );
    std::optional<Subdivision> sub;
    try
    {
        sub = build_subdivision( build_trisection( M, all_a, Label::A, prec.eps ), prec.chunks_per_range );
    }
    catch ( const SmallCaseError & )
    {
    }

    std::optional<SolutionPair> best;
    auto keep = [&] ( SolutionPair s ) {
        if ( !best || better( s, *best ) )
            best = std::move( s );
    };

    for ( int r : r_guesses( n, prec.eps ) )
    {
        if ( std::min( r, n - r ) <= prec.small_r_cutoff || !sub )
        {
            if ( auto s = small_case( M, r ) )
                keep( std::move( *s ) );
            continue;
        }
        try
        {
            keep( detail::search_selections( M, *sub, *sub, r, prec, n, std::uint64_t( r ) ).solution );
        }
        catch ( const MecError & )
        {
            // no disjoint selection pair for this split
        }
    }
    if ( !best )
        throw MecError( "swc: no feasible guess" );

    auto sol       = polish( M, std::move( *best ) );
    sol.assignment = unpermute( sol.assignment, order );
    sol.cost       = cost_fixed( input, sol.sigma, sol.sigma_prime, sol.assignment );
    return sol;
}

}// namespace gmec

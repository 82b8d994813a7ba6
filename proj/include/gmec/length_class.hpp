#pragma once

// Length classes: class i holds rows with length in (m'/2^(i+1), m'/2^i], where
// m' is m rounded up to a power of two. Columns q_i are the multiples of
// m'/2^(i+1); every class-i row crosses one or two of them.

#include <bit>

#include "subinterval.hpp"

namespace gmec {

struct LengthClass
{
    int              level = 0;
    std::vector<int> rows;    // members
    std::vector<int> columns; // q_i, up to m'
    std::vector<int> single;  // rows crossing one column of q_i
    std::vector<int> pair;    // rows crossing two
};

struct LengthClassIndex
{
    int                      m = 0, padded = 1;
    std::vector<LengthClass> classes;// level 0 .. log2(padded)
    std::vector<int>         class_of;

    /// Columns of q_i that row `i` crosses.
    static int crossings ( const Row & r, const std::vector<int> & cols )
    {
        int k = 0;
        for ( int c : cols )
            k += r.crosses( c );
        return k;
    }

    /// Deepest level holding a row; its columns contain every coarser q_i.
    int finest () const
    {
        int f = 0;
        for ( const auto & c : classes )
            if ( !c.rows.empty() )
                f = c.level;
        return f;
    }
};

inline int padded_width ( int m ) { return int( std::bit_ceil( unsigned( std::max( m, 1 ) ) ) ); }

/// q_i: multiples of m'/2^(i+1); once the spacing drops below 1 every column.
inline std::vector<int> class_columns ( int padded, int level )
{
    std::vector<int> out;
    const long parts = 1L << ( level + 1 );
    if ( parts > padded )
    {
        for ( int c = 1; c <= padded; ++c )
            out.push_back( c );
        return out;
    }
    const int step = int( padded / parts );
    for ( long k = 1; k <= parts; ++k )
        out.push_back( int( k * step ) );
    return out;
}

/// Class of a row length: the i with length in (m'/2^(i+1), m'/2^i].
inline int length_class ( int padded, int length )
{
    if ( length < 1 || length > padded )
        throw MecError( "length class: length " + std::to_string( length ) + " out of range" );
    int i = 0;
    // length <= m'/2^(i+1) means a finer class
    while ( 2L * length * ( 1L << i ) <= padded )
        ++i;
    return i;
}

/// Check the crossing, nesting and even-skip properties; throws on violation.
inline void verify_index ( const FragmentMatrix & M, const LengthClassIndex & idx )
{
    for ( std::size_t i = 0; i + 1 < idx.classes.size(); ++i )
    {
        const auto & a = idx.classes[i].columns;
        const auto & b = idx.classes[i + 1].columns;
        if ( !std::includes( b.begin(), b.end(), a.begin(), a.end() ) )
            throw MecError( "internal: q_" + std::to_string( i ) + " not contained in q_" + std::to_string( i + 1 ) );
    }
    for ( const auto & c : idx.classes )
    {
        for ( int r : c.rows )
        {
            const int k = LengthClassIndex::crossings( M.row( r ), c.columns );
            if ( k < 1 || k > 2 )
                throw MecError( "internal: row " + std::to_string( r + 1 ) + " crosses " + std::to_string( k ) + " columns of its class" );
        }
        std::vector<int> odd;// q_{i,j} with odd j (1-based)
        for ( std::size_t j = 0; j < c.columns.size(); j += 2 )
            odd.push_back( c.columns[j] );
        for ( int r : c.pair )
            if ( LengthClassIndex::crossings( M.row( r ), odd ) != 1 )
                throw MecError( "internal: even-skip leaves row " + std::to_string( r + 1 ) + " without exactly one column" );
    }
}

inline LengthClassIndex build_index ( const FragmentMatrix & M )
{
    LengthClassIndex idx;
    idx.m      = M.m();
    idx.padded = padded_width( M.m() );
    const int levels = std::countr_zero( unsigned( idx.padded ) ) + 1;
    for ( int i = 0; i < levels; ++i )
        idx.classes.push_back( LengthClass{ i, {}, class_columns( idx.padded, i ), {}, {} } );

    idx.class_of.resize( std::size_t( M.n() ) );
    for ( int r = 0; r < M.n(); ++r )
    {
        const int i             = length_class( idx.padded, M.row( r ).length() );
        idx.class_of[std::size_t( r )] = i;
        auto & c                = idx.classes[std::size_t( i )];
        c.rows.push_back( r );
        ( LengthClassIndex::crossings( M.row( r ), c.columns ) == 1 ? c.single : c.pair ).push_back( r );
    }
    verify_index( M, idx );
    return idx;
}

namespace detail {

/// Roots: a smallest set of finest-class columns stabbing every row, chosen
/// greedily by increasing row end. Each row joins the first root it crosses.
inline std::vector<std::pair<int, std::vector<int>>> stab_roots ( const FragmentMatrix & M, const LengthClassIndex & idx )
{
    const auto & q = idx.classes[std::size_t( idx.finest() )].columns;
    std::vector<int> by_end( std::size_t( M.n() ) );
    for ( int i = 0; i < M.n(); ++i )
        by_end[std::size_t( i )] = i;
    std::stable_sort( by_end.begin(), by_end.end(), [&] ( int x, int y ) { return M.row( x ).end() < M.row( y ).end(); } );

    std::vector<int> roots;
    for ( int i : by_end )
    {
        const auto & r = M.row( i );
        if ( std::any_of( roots.begin(), roots.end(), [&] ( int c ) { return r.crosses( c ); } ) )
            continue;
        auto it = std::upper_bound( q.begin(), q.end(), r.end() );
        if ( it == q.begin() || *std::prev( it ) < r.start )
            throw MecError( "internal: row " + std::to_string( i + 1 ) + " crosses no finest-class column" );
        roots.push_back( *std::prev( it ) );
    }
    std::sort( roots.begin(), roots.end() );

    std::vector<std::pair<int, std::vector<int>>> groups;
    for ( int c : roots )
        groups.emplace_back( c, std::vector<int>{} );
    for ( int i = 0; i < M.n(); ++i )
        for ( auto & [c, rows] : groups )
            if ( M.row( i ).crosses( c ) )
            {
                rows.push_back( i );
                break;
            }
    return groups;
}

/// Left-to-right chaining of rooted groups. A state is a candidate of the
/// latest group plus the strings and labels built so far. On each column the
/// new group's bits replace the old ones when its labelled rows dominate, the
/// old bits stay when they dominate, and otherwise all labelled rows vote.
inline SolutionPair chain_groups ( const FragmentMatrix & M, const std::vector<std::pair<int, std::vector<int>>> & groups,
                                   const Precision & prec )
{
    const int  m = M.m(), n = M.n();
    const long f = prec.eps.inverse_square();

    struct State
    {
        long       value = 0;
        BitString  s, t;
        Assignment labels;
        std::vector<char> seen;
    };

    auto group_cands = [&] ( const std::pair<int, std::vector<int>> & g ) {
        std::vector<Row> rows;
        for ( int i : g.second )
            rows.push_back( M.row( i ) );
        std::vector<SolutionPair> out;
        for ( auto & s : rooted_pool( FragmentMatrix( m, std::move( rows ) ), g.first, prec, std::size_t( prec.chain_candidates ) ) )
        {
            auto swapped = s;
            std::swap( swapped.sigma, swapped.sigma_prime );
            for ( auto & l : swapped.assignment )
                l = other( l );
            out.push_back( std::move( s ) );
            out.push_back( std::move( swapped ) );
        }
        return out;
    };

    auto seen_cost = [&] ( const State & st ) {
        long c = 0;
        for ( int i = 0; i < n; ++i )
            if ( st.seen[std::size_t( i )] )
                c += std::min( row_dist( M.row( i ), st.s ), row_dist( M.row( i ), st.t ) );
        return c;
    };

    std::vector<State> cur{ State{ 0, BitString( std::size_t( m ), '1' ), BitString( std::size_t( m ), '1' ),
                                   Assignment( std::size_t( n ), Label::A ), std::vector<char>( std::size_t( n ), 0 ) } };

    for ( const auto & g : groups )
    {
        int lo = m + 1, hi = 0;
        for ( int i : g.second )
        {
            lo = std::min( lo, M.row( i ).start );
            hi = std::max( hi, M.row( i ).end() );
        }
        const auto         cands = group_cands( g );
        std::vector<State> next;
        for ( const auto & c : cands )
        {
            std::optional<State> best;
            for ( const auto & st : cur )
            {
                State ns = st;
                for ( std::size_t k = 0; k < g.second.size(); ++k )
                {
                    ns.labels[std::size_t( g.second[k] )] = c.assignment[k];
                    ns.seen[std::size_t( g.second[k] )]   = 1;
                }
                for ( int col = lo; col <= hi; ++col )
                    for ( Label side : { Label::A, Label::B } )
                    {
                        long l = 0, r = 0;
                        std::vector<ChunkVote> votes;
                        for ( int i = 0; i < n; ++i )
                        {
                            if ( !ns.seen[std::size_t( i )] || ns.labels[std::size_t( i )] != side || !M.row( i ).crosses( col ) )
                                continue;
                            const bool mine = st.seen[std::size_t( i )] == 0;
                            ( mine ? r : l ) += 1;
                            votes.push_back( ChunkVote{ 1, { M.at( i, col ) } } );
                        }
                        auto &       out = side == Label::A ? ns.s : ns.t;
                        const auto & cb  = side == Label::A ? c.sigma : c.sigma_prime;
                        if ( r == 0 )
                            continue;
                        if ( l == 0 || r >= f * l )
                            out[std::size_t( col - 1 )] = cb[std::size_t( col - 1 )];
                        else if ( l < f * r )
                            out[std::size_t( col - 1 )] = generalized_majority( votes ) ? '1' : '0';
                    }
                ns.value = seen_cost( ns );
                if ( !best || ns.value < best->value || ( ns.value == best->value && std::tie( ns.s, ns.t ) < std::tie( best->s, best->t ) ) )
                    best = std::move( ns );
            }
            next.push_back( std::move( *best ) );
        }
        cur = std::move( next );
    }

    std::optional<SolutionPair> best;
    for ( const auto & st : cur )
    {
        auto s = polish( M, evaluate( M, st.s, st.t ) );
        if ( !best || better( s, *best ) )
            best = std::move( s );
    }
    return *best;
}

}// namespace detail

/// General instances. SWC-instances go to the joint DP. Otherwise rows are
/// grouped by finest-class root columns, each group is solved as a rooted
/// instance and the groups are chained left to right. Subinterval-free and
/// fully rooted instances also try their dedicated solvers.
inline SolutionPair solve_general ( const FragmentMatrix & M, const Precision & prec )
{
    prec.check();
    if ( M.n() == 0 )
        throw MecError( "general: empty instance" );
    if ( is_swc( M ) )
        return solve_dp_pair( M, prec );

    const auto idx    = build_index( M );
    const auto groups = detail::stab_roots( M, idx );

    std::optional<SolutionPair> best;
    auto keep = [&] ( SolutionPair s ) {
        if ( !best || better( s, *best ) )
            best = std::move( s );
    };
    if ( groups.size() == 1 )
        keep( solve_rooted( M, groups.front().first, prec ) );
    else
        keep( detail::symmetric( M, [&] ( const FragmentMatrix & X ) {
            return detail::chain_groups( X, detail::stab_roots( X, build_index( X ) ), prec );
        } ) );

    if ( is_subinterval_free( M ) )
        keep( solve_subinterval_free( M, prec ) );
    for ( int r : r_guesses( M.n(), prec.eps ) )
        if ( std::min( r, M.n() - r ) <= prec.small_r_cutoff )
            if ( auto s = small_case( M, r ) )
                keep( std::move( *s ) );
    return *best;
}

}// namespace gmec

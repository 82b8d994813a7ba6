#pragma once

// Block/chunk/selection dynamic programs for instances whose first column is
// fully binary: the single-string DP and the joint DP over pairs of cells.
//
// Rows are 0-based and sorted into standard ordering inside the solvers.
// A block (a, b, c) has U = [a, b), L = [b, c), X = [c, n). A cell with
// c = n is terminal and covers the remaining columns up to m.

#include <map>
#include <unordered_map>

#include "swc.hpp"

namespace gmec {

struct Block
{
    int a = 0, b = 0, c = 0;
    int first_col = 1, last_col = 1;

    bool operator== ( const Block & ) const = default;
};

/// Chunk boundaries of U and L, endpoints included:
/// upper = a = a_1 < ... < b, lower = b = b_1 < ... < c.
struct ChunkSet
{
    std::vector<int> upper;
    std::vector<int> lower;

    bool operator== ( const ChunkSet & ) const = default;

    bool valid () const
    {
        auto strictly = [] ( const std::vector<int> & v ) {
            return v.size() >= 2 && std::adjacent_find( v.begin(), v.end(), std::greater_equal<>() ) == v.end();
        };
        return strictly( upper ) && strictly( lower ) && upper.back() == lower.front();
    }
};

struct DpCell
{
    Block     block;
    ChunkSet  chunks;
    Selection selection;
    long      value = 0;
    BitString prefix;
};

/// Same block, chunks and selection; value and prefix are not part of a cell's identity.
inline bool same_cell ( const DpCell & x, const DpCell & y )
{
    return x.block.a == y.block.a && x.block.b == y.block.b && x.block.c == y.block.c && x.chunks == y.chunks
           && x.selection == y.selection;
}

struct JointCell
{
    DpCell    cell_a, cell_b;
    long      value = 0;
    BitString prefix_a, prefix_b;
};

/// prev = (a, b, c) precedes next = (b, c, d) when the shared range has the
/// same chunks and the same selection.
inline bool is_predecessor ( const DpCell & prev, const DpCell & next )
{
    return next.block.a == prev.block.b && next.block.b == prev.block.c && next.chunks.upper == prev.chunks.lower
           && next.selection.upper == prev.selection.lower;
}

/// Exactly one side advances by a predecessor step, the other stays identical.
inline bool is_joint_predecessor ( const JointCell & prev, const JointCell & next )
{
    const bool a_same = same_cell( prev.cell_a, next.cell_a );
    const bool b_same = same_cell( prev.cell_b, next.cell_b );
    return ( a_same && !b_same && is_predecessor( prev.cell_b, next.cell_b ) )
           || ( b_same && !a_same && is_predecessor( prev.cell_a, next.cell_a ) );
}

namespace detail {

/// Sorted SWC instance plus the lookups the DPs share.
class SwcView
{
public:
    SwcView ( const FragmentMatrix & M, const Precision & prec )
        : M( M ), prec( prec ), n( M.n() ), m( M.m() )
    {
        // normalised pairwise mismatch (mismatches, overlap)
        mism.assign( std::size_t( n * n ), 0 );
        overlap.assign( std::size_t( n * n ), 0 );
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
            {
                const auto & x  = M.row( i );
                const auto & y  = M.row( j );
                const int    lo = std::max( x.start, y.start ), hi = std::min( x.end(), y.end() );
                int          d = 0;
                for ( int col = lo; col <= hi; ++col )
                    d += x.at( col ) != y.at( col );
                mism[std::size_t( i * n + j )]    = d;
                overlap[std::size_t( i * n + j )] = std::max( 0, hi - lo + 1 );
            }
    }

    const FragmentMatrix & M;
    const Precision &      prec;
    int                    n, m;

    int end ( int i ) const { return M.row( i ).end(); }

    /// Last column covered by a cell whose L starts at row b.
    int last_col ( int b, int c ) const { return c >= n ? m : end( b ); }

    /// Last column covered by the predecessors of a cell starting at row a.
    int covered_before ( int a ) const { return a == 0 ? 0 : end( a ); }

    // row j closer to anchor than row k
    bool closer ( int anchor, int j, int k ) const
    {
        const long dj = mism[std::size_t( anchor * n + j )], oj = overlap[std::size_t( anchor * n + j )];
        const long dk = mism[std::size_t( anchor * n + k )], ok = overlap[std::size_t( anchor * n + k )];
        // rows without overlap rank last
        if ( ( oj == 0 ) != ( ok == 0 ) )
            return ok == 0;
        if ( dj * std::max( ok, 1L ) != dk * std::max( oj, 1L ) )
            return dj * std::max( ok, 1L ) < dk * std::max( oj, 1L );
        return j < k;
    }

    const std::vector<RowRange> & chunks ( int x, int y )
    {
        auto key = std::pair{ x, y };
        auto it  = chunk_cache.find( key );
        if ( it == chunk_cache.end() )
            it = chunk_cache.emplace( key, split_range( RowRange{ x, y }, prec.chunks_per_range ) ).first;
        return it->second;
    }

    /// S rows per chunk of [x, y) closest to `anchor`, skipping `banned`.
    std::optional<std::vector<std::vector<int>>> nearest ( int anchor, int x, int y, const std::vector<char> * banned )
    {
        std::vector<std::vector<int>> out;
        for ( const auto & ch : chunks( x, y ) )
        {
            std::vector<int> pool;
            for ( int i = ch.first; i < ch.last; ++i )
                if ( !banned || !( *banned )[std::size_t( i )] )
                    pool.push_back( i );
            if ( pool.empty() )
                return std::nullopt;
            std::sort( pool.begin(), pool.end(), [&] ( int j, int k ) { return closer( anchor, j, k ); } );
            std::vector<int> pick;
            for ( int k = 0; k < prec.rows_per_chunk; ++k )
                pick.push_back( pool[std::size_t( k ) % pool.size()] );
            std::sort( pick.begin(), pick.end() );
            out.push_back( std::move( pick ) );
        }
        return out;
    }

    /// Anchor rows: farthest-point traversal from the longest row.
    std::vector<int> anchors ( int count ) const
    {
        std::vector<int> chosen;
        if ( n == 0 )
            return chosen;
        count = std::min( count, n );
        int first = 0;
        for ( int i = 1; i < n; ++i )
            if ( M.row( i ).length() > M.row( first ).length() )
                first = i;
        chosen.push_back( first );
        std::vector<double> gap( std::size_t( n ), 2.0 );
        while ( int( chosen.size() ) < count )
        {
            const int last = chosen.back();
            for ( int i = 0; i < n; ++i )
            {
                const double ov = overlap[std::size_t( last * n + i )];
                const double d  = ov > 0 ? mism[std::size_t( last * n + i )] / ov : 1.0;
                gap[std::size_t( i )] = std::min( gap[std::size_t( i )], d );
            }
            for ( int c : chosen )
                gap[std::size_t( c )] = -1;
            int best = -1;
            for ( int i = 0; i < n; ++i )
                if ( gap[std::size_t( i )] >= 0
                     && ( best < 0 || gap[std::size_t( i )] > gap[std::size_t( best )]
                          || ( gap[std::size_t( i )] == gap[std::size_t( best )] && M.row( i ).length() > M.row( best ).length() ) ) )
                    best = i;
            if ( best < 0 )
                break;
            chosen.push_back( best );
        }
        return chosen;
    }

    /// Candidate boundary rows in (lo, n): all when n is small, a grid otherwise.
    const std::vector<int> & boundaries ()
    {
        if ( !grid.empty() )
            return grid;
        std::set<int> g;
        if ( n <= prec.max_boundaries )
        {
            for ( int i = 1; i < n; ++i )
                g.insert( i );
        }
        else
        {
            for ( int k = 1; k < prec.max_boundaries; ++k )
                g.insert( int( std::lround( double( n ) * k / prec.max_boundaries ) ) );
            // geometric refinement towards the long rows at the bottom
            for ( double tail = n * prec.eps.value(); tail >= 1; tail *= prec.eps.value() )
                g.insert( n - int( std::lround( tail ) ) );
            g.erase( 0 );
            g.erase( n );
        }
        grid.assign( g.begin(), g.end() );
        return grid;
    }

    /// Ends c of L for a cell with U = [a, b): sizes near eps * |U|, plus c = n.
    std::vector<int> next_ends ( int a, int b )
    {
        std::set<int> out;
        const int     u      = b - a;
        const int     target = std::max( 1, int( ( long( u ) * prec.eps.num + prec.eps.den - 1 ) / prec.eps.den ) );
        const auto &  g      = boundaries();
        for ( int l = std::max( 1, target - 1 ); l <= target + 1; ++l )
        {
            // snap to the grid
            auto it = std::lower_bound( g.begin(), g.end(), b + l );
            if ( it != g.end() )
                out.insert( *it );
        }
        out.insert( n );
        return { out.begin(), out.end() };
    }

private:
    std::vector<int>                                          mism, overlap;
    std::map<std::pair<int, int>, std::vector<RowRange>>      chunk_cache;
    std::vector<int>                                          grid;
};

inline void vote_segment ( const FragmentMatrix & M, const std::vector<std::vector<int>> & upper,
                           const std::vector<std::vector<int>> & lower, Epsilon eps, int lo, int hi, BitString & out )
{
    for ( int col = lo; col <= hi; ++col )
    {
        long su = 0, sl = 0;
        for ( const auto & c : upper )
            for ( int i : c )
                su += M.row( i ).signed_at( col );
        for ( const auto & c : lower )
            for ( int i : c )
                sl += M.row( i ).signed_at( col );
        out[std::size_t( col - 1 )] = su * eps.den + sl * eps.num >= 0 ? '1' : '0';
    }
}

inline std::vector<int> flatten ( const std::vector<std::vector<int>> & chunks )
{
    std::vector<int> out;
    for ( const auto & c : chunks )
        out.insert( out.end(), c.begin(), c.end() );
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

inline bool intersects ( const std::vector<int> & x, const std::vector<int> & y )
{
    auto i = x.begin();
    auto j = y.begin();
    while ( i != x.end() && j != y.end() )
    {
        if ( *i == *j )
            return true;
        if ( *i < *j )
            ++i;
        else
            ++j;
    }
    return false;
}

/// Chunk boundaries of a cell in ChunkSet form.
inline ChunkSet chunk_set ( SwcView & view, int a, int b, int c )
{
    ChunkSet cs;
    for ( const auto & r : view.chunks( a, b ) )
        cs.upper.push_back( r.first );
    cs.upper.push_back( b );
    for ( const auto & r : view.chunks( b, c ) )
        cs.lower.push_back( r.first );
    cs.lower.push_back( c );
    return cs;
}

}// namespace detail

/// Forced prefix and anchor restrictions for seeded runs (rooted solver).
struct DpOptions
{
    int                             forced_cols = 0;// columns 1..forced_cols are fixed
    BitString                       forced_a, forced_b;
    std::optional<std::vector<int>> anchors_a, anchors_b;// rows in the caller's order
    bool                            collect_cells = false;
};

struct DpReport
{
    std::vector<SolutionPair> terminals;// best terminal string pairs, default assignment, caller's row order
    std::vector<JointCell>    cells;    // filled when collect_cells is set
    std::size_t               states    = 0;
    bool                      truncated = false;
    long                      best_value = std::numeric_limits<long>::max();
};

namespace detail {

struct SideState
{
    int a = 0, b = 0, c = 0;
    int anchor = 0;
    int usel = 0, lsel = 0;// interned selection ids
    int e = 0;             // last column fixed on this side
};

struct JointState
{
    SideState side[2];
    long      value = 0;
    BitString prefix[2];
};

class SelectionTable
{
public:
    int intern ( std::vector<std::vector<int>> sel )
    {
        auto it = ids.find( sel );
        if ( it != ids.end() )
            return it->second;
        const int id = int( table.size() );
        flat.push_back( flatten( sel ) );
        table.push_back( sel );
        ids.emplace( std::move( sel ), id );
        return id;
    }

    const std::vector<std::vector<int>> & at ( int id ) const { return table[std::size_t( id )]; }
    const std::vector<int> & rows ( int id ) const { return flat[std::size_t( id )]; }

private:
    std::map<std::vector<std::vector<int>>, int> ids;
    std::vector<std::vector<std::vector<int>>>   table;
    std::vector<std::vector<int>>                flat;
};

struct StateKey
{
    int anchor[2], b[2], c[2], lsel[2];

    bool operator== ( const StateKey & ) const = default;
};

struct StateKeyHash
{
    std::size_t operator() ( const StateKey & k ) const noexcept
    {
        std::size_t h = 1469598103934665603ULL;
        for ( int s = 0; s < 2; ++s )
            for ( int v : { k.anchor[s], k.b[s], k.c[s], k.lsel[s] } )
                h = ( h ^ std::size_t( v + 0x9e37 ) ) * 1099511628211ULL;
        return h;
    }
};

inline DpCell to_cell ( SwcView & view, const SelectionTable & sels, const SideState & s, const BitString & prefix )
{
    DpCell cell;
    cell.block     = Block{ s.a, s.b, s.c, view.covered_before( s.a ) + 1, view.last_col( s.b, s.c ) };
    cell.chunks    = chunk_set( view, s.a, s.b, s.c );
    cell.selection = Selection{ sels.at( s.usel ), sels.at( s.lsel ) };
    cell.prefix    = prefix.substr( 0, std::size_t( s.e ) );
    return cell;
}

/// Joint DP on a matrix already in standard ordering.
inline DpReport run_joint_dp ( const FragmentMatrix & M, const Precision & prec, const DpOptions & opt )
{
    SwcView        view( M, prec );
    SelectionTable sels;
    const int      n = M.n(), m = M.m();
    const Epsilon  eps = prec.eps;
    DpReport       report;

    std::vector<JointState>                            states;
    std::unordered_map<StateKey, int, StateKeyHash>    index;
    std::map<int, std::vector<int>>                    buckets;// b_A + b_B -> states

    auto window_value = [&] ( const JointState & st ) {
        const int rows = std::min( st.side[0].c, st.side[1].c );
        const int cols = std::min( st.side[0].e, st.side[1].e );
        return cost_window( M, st.prefix[0], st.prefix[1], 0, rows, 1, cols );
    };

    auto offer = [&] ( JointState st ) {
        st.value = window_value( st );
        StateKey key;
        for ( int s = 0; s < 2; ++s )
        {
            key.anchor[s] = st.side[s].anchor;
            key.b[s]      = st.side[s].b;
            key.c[s]      = st.side[s].c;
            key.lsel[s]   = st.side[s].lsel;
        }
        auto it = index.find( key );
        if ( it != index.end() )
        {
            auto & cur = states[std::size_t( it->second )];
            if ( st.value < cur.value
                 || ( st.value == cur.value && std::tie( st.prefix[0], st.prefix[1] ) < std::tie( cur.prefix[0], cur.prefix[1] ) ) )
                cur = std::move( st );
            return;
        }
        if ( states.size() >= std::size_t( prec.max_joint_states ) )
        {
            report.truncated = true;
            return;
        }
        index.emplace( key, int( states.size() ) );
        buckets[st.side[0].b + st.side[1].b].push_back( int( states.size() ) );
        states.push_back( std::move( st ) );
    };

    // anchor pairs
    const auto default_anchors = view.anchors( prec.range_selections );
    const auto anchors_a       = opt.anchors_a.value_or( default_anchors );
    const auto anchors_b       = opt.anchors_b.value_or( default_anchors );

    const auto & grid   = view.boundaries();
    const int    forced = std::min( opt.forced_cols, m );

    auto fresh_prefix = [&] ( int s ) {
        BitString p( std::size_t( m ), '1' );
        const auto & f = s == 0 ? opt.forced_a : opt.forced_b;
        for ( int col = 1; col <= forced; ++col )
            p[std::size_t( col - 1 )] = f[std::size_t( col - 1 )];
        return p;
    };

    // first cells per side: (0, b, c) with U and L selected around the anchor
    struct FirstCell
    {
        SideState side;
        BitString prefix;
    };
    auto first_cells = [&] ( int s, int anchor, const std::vector<char> * banned ) {
        std::vector<FirstCell> out;
        std::vector<int>       bs = grid;
        if ( n == 1 )
            bs.clear();
        for ( int b : bs )
        {
            for ( int c : view.next_ends( 0, b ) )
            {
                auto up = view.nearest( anchor, 0, b, banned );
                auto lo = view.nearest( anchor, b, c, banned );
                if ( !up || !lo )
                    continue;
                FirstCell fc;
                fc.side   = SideState{ 0, b, c, anchor, sels.intern( *up ), sels.intern( *lo ), view.last_col( b, c ) };
                fc.prefix = fresh_prefix( s );
                vote_segment( M, *up, *lo, eps, forced + 1, fc.side.e, fc.prefix );
                out.push_back( std::move( fc ) );
            }
        }
        return out;
    };

    for ( int x : anchors_a )
    {
        for ( int y : anchors_b )
        {
            if ( x == y && n > 1 )
                continue;
            for ( auto & fa : first_cells( 0, x, nullptr ) )
            {
                std::vector<char> banned( std::size_t( n ), 0 );
                for ( int i : sels.rows( fa.side.usel ) )
                    banned[std::size_t( i )] = 1;
                for ( int i : sels.rows( fa.side.lsel ) )
                    banned[std::size_t( i )] = 1;
                for ( auto & fb : first_cells( 1, y, &banned ) )
                {
                    JointState st;
                    st.side[0]   = fa.side;
                    st.side[1]   = fb.side;
                    st.prefix[0] = fa.prefix;
                    st.prefix[1] = fb.prefix;
                    offer( std::move( st ) );
                }
            }
        }
    }

    // update phase: buckets in increasing b_A + b_B; the lagging side advances
    std::vector<int> terminals;
    while ( !buckets.empty() )
    {
        auto node = buckets.extract( buckets.begin() );
        for ( int id : node.mapped() )
        {
            const JointState st = states[std::size_t( id )];
            const bool       done[2] = { st.side[0].c >= n, st.side[1].c >= n };
            if ( done[0] && done[1] )
            {
                terminals.push_back( id );
                continue;
            }
            const int s     = done[0] ? 1 : done[1] ? 0 : ( st.side[0].e <= st.side[1].e ? 0 : 1 );
            const auto & me = st.side[s];
            const auto & ot = st.side[1 - s];

            std::vector<char> banned( std::size_t( n ), 0 );
            for ( int i : sels.rows( ot.usel ) )
                banned[std::size_t( i )] = 1;
            for ( int i : sels.rows( ot.lsel ) )
                banned[std::size_t( i )] = 1;
            if ( intersects( sels.rows( me.lsel ), sels.rows( ot.lsel ) ) )
                continue;

            for ( int d : view.next_ends( me.b, me.c ) )
            {
                if ( d <= me.c )
                    continue;
                auto lo = view.nearest( me.anchor, me.c, d, &banned );
                if ( !lo )
                    continue;
                JointState next = st;
                auto &     ns   = next.side[s];
                ns              = SideState{ me.b, me.c, d, me.anchor, me.lsel, sels.intern( *lo ), view.last_col( me.c, d ) };
                const int lo_col = std::max( forced, me.e ) + 1;
                vote_segment( M, sels.at( ns.usel ), sels.at( ns.lsel ), eps, lo_col, ns.e, next.prefix[s] );
                offer( std::move( next ) );
            }
        }
    }

    report.states = states.size();

    // terminal states have full strings; their value is the default cost on the whole instance
    std::sort( terminals.begin(), terminals.end(), [&] ( int x, int y ) {
        const auto & p = states[std::size_t( x )];
        const auto & q = states[std::size_t( y )];
        return std::tie( p.value, p.prefix[0], p.prefix[1] ) < std::tie( q.value, q.prefix[0], q.prefix[1] );
    } );
    terminals.erase( std::unique( terminals.begin(), terminals.end() ), terminals.end() );
    std::set<std::pair<BitString, BitString>> seen;
    for ( int id : terminals )
    {
        const auto & st = states[std::size_t( id )];
        if ( !seen.insert( { st.prefix[0], st.prefix[1] } ).second )
            continue;
        report.terminals.push_back( evaluate( M, st.prefix[0], st.prefix[1] ) );
        report.best_value = std::min( report.best_value, st.value );
        if ( int( report.terminals.size() ) >= 16 )
            break;
    }

    if ( opt.collect_cells )
    {
        for ( const auto & st : states )
        {
            JointCell jc;
            jc.cell_a   = to_cell( view, sels, st.side[0], st.prefix[0] );
            jc.cell_b   = to_cell( view, sels, st.side[1], st.prefix[1] );
            jc.value    = st.value;
            jc.prefix_a = st.prefix[0];
            jc.prefix_b = st.prefix[1];
            report.cells.push_back( std::move( jc ) );
        }
    }
    return report;
}

}// namespace detail

/// In-scope rows and columns of a joint cell's value: rows [0, min(c, c')),
/// columns [1, min(last_col, last_col')].
inline long joint_cell_scope_cost ( const FragmentMatrix & sorted, const JointCell & jc )
{
    const int rows = std::min( jc.cell_a.block.c, jc.cell_b.block.c );
    const int cols = std::min( jc.cell_a.block.last_col, jc.cell_b.block.last_col );
    return cost_window( sorted, jc.prefix_a, jc.prefix_b, 0, rows, 1, cols );
}

/// Joint DP run on `input` (any row order). Terminal solutions come back in input row order.
inline DpReport run_dp_pair ( const FragmentMatrix & input, const Precision & prec, DpOptions opt = {} )
{
    prec.check();
    if ( !is_swc( input ) )
        throw MecError( "dp-pair: instance is not an SWC-instance (column 1 must be fully binary)" );

    const auto order = standard_order( input );
    const auto M     = permute_rows( input, order );

    // anchors are given in input order
    std::vector<int> where( order.size() );
    for ( std::size_t k = 0; k < order.size(); ++k )
        where[std::size_t( order[k] )] = int( k );
    for ( auto * anchors : { &opt.anchors_a, &opt.anchors_b } )
        if ( *anchors )
            for ( auto & i : **anchors )
                i = where[std::size_t( i )];

    auto report = detail::run_joint_dp( M, prec, opt );
    for ( auto & t : report.terminals )
        t.assignment = unpermute( t.assignment, order );
    return report;
}

/// Joint DP with a guessed split: r rows on sigma, r' on sigma'.
inline SolutionPair dp_pair ( const FragmentMatrix & M, int r, int r_prime, const Precision & prec )
{
    if ( r < 0 || r_prime < 0 || r + r_prime != M.n() )
        throw MecError( "dp-pair: r + r' must equal n" );
    if ( !is_swc( M ) )
        throw MecError( "dp-pair: instance is not an SWC-instance (column 1 must be fully binary)" );
    if ( std::min( r, r_prime ) <= prec.small_r_cutoff )
        if ( auto s = small_case( M, r ) )
            return *s;

    const auto report = run_dp_pair( M, prec );
    std::optional<SolutionPair> best;
    for ( const auto & t : report.terminals )
    {
        // r smallest d_i over the whole instance
        auto s = assign_r_smallest( M, t.sigma, t.sigma_prime, r, M.n() );
        if ( !best || better( s, *best ) )
            best = std::move( s );
    }
    if ( !best )
        throw MecError( "dp-pair: no terminal cell reached" );
    return *best;
}

/// The r loop around the joint DP; r values at or below the cutoff are solved exactly.
inline SolutionPair solve_dp_pair ( const FragmentMatrix & M, const Precision & prec )
{
    prec.check();
    if ( !is_swc( M ) )
        throw MecError( "dp-pair: instance is not an SWC-instance (column 1 must be fully binary)" );

    const int n      = M.n();
    const auto report = run_dp_pair( M, prec );

    std::optional<SolutionPair> best;
    auto keep = [&] ( SolutionPair s ) {
        if ( !best || better( s, *best ) )
            best = std::move( s );
    };
    for ( int r : r_guesses( n, prec.eps ) )
    {
        if ( std::min( r, n - r ) <= prec.small_r_cutoff )
        {
            if ( auto s = small_case( M, r ) )
                keep( std::move( *s ) );
            continue;
        }
        for ( const auto & t : report.terminals )
            keep( assign_r_smallest( M, t.sigma, t.sigma_prime, r, n ) );
    }
    if ( !best )
        throw MecError( "dp-pair: no solution" );
    return polish( M, std::move( *best ) );
}

//
// single-string DP
//

namespace detail {

struct SingleState
{
    SideState side;
    long      value = 0;
    BitString prefix;
};

/// Single-string DP over a sorted matrix; returns the best terminal strings.
inline std::vector<BitString> run_single_dp ( const FragmentMatrix & M, const Precision & prec )
{
    SwcView        view( M, prec );
    SelectionTable sels;
    const int      n = M.n(), m = M.m();

    // in-scope errors: rows [a, c) against the cell's columns
    auto segment_err = [&] ( const BitString & s, int a, int c, int lo, int hi ) {
        long e = 0;
        for ( int i = a; i < c; ++i )
            e += row_dist( M.row( i ), s, lo, hi );
        return e;
    };

    // terminal cells with few remaining rows take the exact column majority
    auto exact_tail = [&] ( int a, int lo, BitString & s ) {
        for ( int col = lo; col <= m; ++col )
        {
            long bal = 0;
            for ( int i = a; i < n; ++i )
                bal += M.row( i ).signed_at( col );
            s[std::size_t( col - 1 )] = bal >= 0 ? '1' : '0';
        }
    };

    std::map<std::tuple<int, int, int, int>, SingleState> table;// (anchor, b, c, lsel)
    std::map<int, std::vector<std::tuple<int, int, int, int>>> by_b;

    auto offer = [&] ( SingleState st ) {
        auto key = std::tuple{ st.side.anchor, st.side.b, st.side.c, st.side.lsel };
        auto it  = table.find( key );
        if ( it == table.end() )
        {
            by_b[st.side.b].push_back( key );
            table.emplace( key, std::move( st ) );
        }
        else if ( st.value < it->second.value || ( st.value == it->second.value && st.prefix < it->second.prefix ) )
            it->second = std::move( st );
    };

    for ( int x : view.anchors( prec.range_selections ) )
    {
        std::vector<int> bs = view.boundaries();
        if ( n == 1 )
        {
            BitString s( std::size_t( m ), '1' );
            exact_tail( 0, 1, s );
            offer( SingleState{ SideState{ 0, 1, 1, x, 0, 0, m }, segment_err( s, 0, 1, 1, m ), s } );
            continue;
        }
        for ( int b : bs )
            for ( int c : view.next_ends( 0, b ) )
            {
                auto up = view.nearest( x, 0, b, nullptr );
                auto lo = view.nearest( x, b, c, nullptr );
                SingleState st;
                st.side   = SideState{ 0, b, c, x, sels.intern( *up ), sels.intern( *lo ), view.last_col( b, c ) };
                st.prefix = BitString( std::size_t( m ), '1' );
                if ( c >= n && n <= prec.small_r_cutoff )
                    exact_tail( 0, 1, st.prefix );
                else
                    vote_segment( M, *up, *lo, prec.eps, 1, st.side.e, st.prefix );
                st.value = segment_err( st.prefix, 0, c, 1, st.side.e );
                offer( std::move( st ) );
            }
    }

    while ( !by_b.empty() )
    {
        auto node = by_b.extract( by_b.begin() );
        for ( const auto & key : node.mapped() )
        {
            const SingleState st = table.at( key );
            const auto &      me = st.side;
            if ( me.c >= n )
                continue;
            for ( int d : view.next_ends( me.b, me.c ) )
            {
                auto lo = view.nearest( me.anchor, me.c, d, nullptr );
                SingleState next = st;
                next.side        = SideState{ me.b, me.c, d, me.anchor, me.lsel, sels.intern( *lo ), view.last_col( me.c, d ) };
                if ( d >= n && n - me.b <= prec.small_r_cutoff )
                    exact_tail( me.b, me.e + 1, next.prefix );
                else
                    vote_segment( M, sels.at( next.side.usel ), sels.at( next.side.lsel ), prec.eps, me.e + 1, next.side.e, next.prefix );
                next.value = st.value + segment_err( next.prefix, me.b, d, me.e + 1, next.side.e );
                offer( std::move( next ) );
            }
        }
    }

    std::vector<std::pair<long, BitString>> done;
    for ( const auto & [key, st] : table )
        if ( st.side.c >= n )
            done.emplace_back( st.value, st.prefix );
    std::sort( done.begin(), done.end() );
    std::vector<BitString> out;
    for ( auto & [v, s] : done )
    {
        if ( std::find( out.begin(), out.end(), s ) == out.end() )
            out.push_back( s );
        if ( out.size() >= 16 )
            break;
    }
    return out;
}

inline SolutionPair single_with_r ( const FragmentMatrix & M, const BitString & sigma, int r )
{
    // r rows closest to sigma on A; sigma' completes the rest by majority
    std::vector<std::pair<long, int>> d;
    for ( int i = 0; i < M.n(); ++i )
        d.emplace_back( row_dist( M.row( i ), sigma ), i );
    std::sort( d.begin(), d.end() );
    Assignment a( std::size_t( M.n() ), Label::B );
    for ( int k = 0; k < r; ++k )
        a[std::size_t( d[std::size_t( k )].second )] = Label::A;
    SolutionPair sol;
    sol.sigma       = sigma;
    sol.sigma_prime = majority_string( M, a, Label::B );
    sol.assignment  = a;
    sol.cost        = cost_fixed( M, sol.sigma, sol.sigma_prime, a );
    return sol;
}

}// namespace detail

/// Single-string DP: sigma from the DP, r closest rows on sigma, sigma' by majority of the rest.
inline SolutionPair dp_single ( const FragmentMatrix & input, int r, const Precision & prec )
{
    prec.check();
    if ( !is_swc( input ) )
        throw MecError( "dp-single: instance is not an SWC-instance (column 1 must be fully binary)" );
    if ( r < 0 || r > input.n() )
        throw MecError( "dp-single: r out of range" );

    const auto order = standard_order( input );
    const auto M     = permute_rows( input, order );
    if ( input.n() <= prec.small_r_cutoff )
        if ( auto s = small_case( M, r ) )
        {
            s->assignment = unpermute( s->assignment, order );
            return *s;
        }

    std::optional<SolutionPair> best;
    for ( const auto & sigma : detail::run_single_dp( M, prec ) )
    {
        auto s = detail::single_with_r( M, sigma, r );
        if ( !best || better( s, *best ) )
            best = std::move( s );
    }
    best->assignment = unpermute( best->assignment, order );
    return *best;
}

inline SolutionPair solve_dp_single ( const FragmentMatrix & input, const Precision & prec )
{
    prec.check();
    if ( !is_swc( input ) )
        throw MecError( "dp-single: instance is not an SWC-instance (column 1 must be fully binary)" );

    const auto order   = standard_order( input );
    const auto M       = permute_rows( input, order );
    const auto strings = detail::run_single_dp( M, prec );
    const int  n       = M.n();

    std::optional<SolutionPair> best;
    auto keep = [&] ( SolutionPair s ) {
        if ( !best || better( s, *best ) )
            best = std::move( s );
    };
    for ( int r : r_guesses( n, prec.eps ) )
    {
        if ( n <= prec.small_r_cutoff )
        {
            if ( auto s = small_case( M, r ) )
                keep( std::move( *s ) );
            continue;
        }
        for ( const auto & sigma : strings )
            keep( detail::single_with_r( M, sigma, r ) );
    }
    auto sol       = polish( M, std::move( *best ) );
    sol.assignment = unpermute( sol.assignment, order );
    sol.cost       = cost_fixed( input, sol.sigma, sol.sigma_prime, sol.assignment );
    return sol;
}

}// namespace gmec

#pragma once

// Rooted and subinterval-free instances: center cells around a root column,
// q-sequences, dominance between neighbouring roots and the outer chaining DP.

#include "dp.hpp"

namespace gmec {

//
// q-sequence
//

struct QSequence
{
    std::vector<int> columns;// q_1 < q_2 < ...
    std::vector<int> root_of;// per input row: index into columns of the one root it crosses
};

/// Row indices ordered by increasing start, then end.
inline std::vector<int> start_order ( const FragmentMatrix & M )
{
    std::vector<int> order( std::size_t( M.n() ) );
    for ( int i = 0; i < M.n(); ++i )
        order[std::size_t( i )] = i;
    std::stable_sort( order.begin(), order.end(), [&] ( int x, int y ) {
        return std::pair{ M.row( x ).start, M.row( x ).end() } < std::pair{ M.row( y ).start, M.row( y ).end() };
    } );
    return order;
}

inline QSequence build_qsequence ( const FragmentMatrix & M )
{
    if ( !is_subinterval_free( M ) )
        throw MecError( "q-sequence: instance is not subinterval-free" );

    QSequence q;
    q.root_of.assign( std::size_t( M.n() ), -1 );
    const auto order = start_order( M );
    std::size_t k = 0;
    while ( k < order.size() )
    {
        const int col = M.row( order[k] ).end();
        q.columns.push_back( col );
        // rows crossing col are contiguous in start order
        while ( k < order.size() && M.row( order[k] ).crosses( col ) )
            ++k;
    }

    for ( int i = 0; i < M.n(); ++i )
    {
        int hits = 0;
        for ( std::size_t j = 0; j < q.columns.size(); ++j )
            if ( M.row( i ).crosses( q.columns[j] ) )
            {
                ++hits;
                q.root_of[std::size_t( i )] = int( j );
            }
        if ( hits != 1 )
            throw MecError( "q-sequence: row " + std::to_string( i + 1 ) + " crosses " + std::to_string( hits ) + " roots" );
    }
    return q;
}

//
// dominance
//

/// V1 dominates V2: on every shared column one side has no reference entries
/// or V1 has at least 1/eps^2 times as many.
inline bool dominates ( std::span<const long> v1, std::span<const long> v2, Epsilon eps )
{
    if ( v1.size() != v2.size() )
        throw MecError( "dominates: count vectors differ in length" );
    const long f = eps.inverse_square();
    for ( std::size_t k = 0; k < v1.size(); ++k )
        if ( v1[k] != 0 && v2[k] != 0 && v1[k] < f * v2[k] )
            return false;
    return true;
}

/// Per-column count of rows in `rows` labelled `side` with a binary entry there.
inline std::vector<long> reference_counts ( const FragmentMatrix & M, std::span<const int> rows, const Assignment & reference,
                                            Label side, int first_col, int last_col )
{
    std::vector<long> out( std::size_t( std::max( 0, last_col - first_col + 1 ) ), 0 );
    for ( int i : rows )
        if ( reference[std::size_t( i )] == side )
            for ( int col = std::max( first_col, M.row( i ).start ); col <= std::min( last_col, M.row( i ).end() ); ++col )
                ++out[std::size_t( col - first_col )];
    return out;
}

/// Submatrix form: rows of V1 and V2 with their column spans, counted on shared columns.
inline bool dominates ( const FragmentMatrix & M, std::span<const int> v1, std::span<const int> v2, const Assignment & reference,
                        Label side, Epsilon eps )
{
    auto span_of = [&] ( std::span<const int> rows ) {
        int lo = M.m() + 1, hi = 0;
        for ( int i : rows )
        {
            lo = std::min( lo, M.row( i ).start );
            hi = std::max( hi, M.row( i ).end() );
        }
        return std::pair{ lo, hi };
    };
    const auto [a1, b1] = span_of( v1 );
    const auto [a2, b2] = span_of( v2 );
    const int lo = std::max( a1, a2 ), hi = std::min( b1, b2 );
    if ( lo > hi )
        return true;
    return dominates( reference_counts( M, v1, reference, side, lo, hi ), reference_counts( M, v2, reference, side, lo, hi ), eps );
}

struct DominanceReport
{
    int first_col = 1, last_col = 0;// shared columns scanned
    int lo = 1, hi = 0;             // non-dominance interval I, empty when lo > hi
    std::vector<char> pattern;      // per shared column: 'L' left dominates, 'R' right, 'B' both, 'N' none

    bool empty () const noexcept { return lo > hi; }
    int  width () const noexcept { return empty() ? 0 : hi - lo + 1; }
};

/// Scan shared columns. `left` are the counts of the left root's rows (reaching
/// right), `right` those of the right root's rows (reaching left). The left
/// side must dominate on a prefix, the right side on a suffix, and I sits between.
inline DominanceReport dominance_intervals ( std::span<const long> left, std::span<const long> right, int first_col, Epsilon eps )
{
    if ( left.size() != right.size() )
        throw MecError( "dominance: count vectors differ in length" );
    const long      f = eps.inverse_square();
    DominanceReport rep;
    rep.first_col = first_col;
    rep.last_col  = first_col + int( left.size() ) - 1;

    int stage = 0;// 0: left dominant, 1: inside I, 2: right dominant
    for ( std::size_t k = 0; k < left.size(); ++k )
    {
        const long l = left[k], r = right[k];
        const bool vac = l == 0 || r == 0;
        const bool ld = vac || l >= f * r;
        const bool rd = vac || r >= f * l;
        const char c  = ld && rd ? 'B' : ld ? 'L' : rd ? 'R' : 'N';
        rep.pattern.push_back( c );
        const int col = first_col + int( k );

        if ( c == 'L' && stage > 0 )
            throw MecError( "internal: left dominance regained at column " + std::to_string( col ) );
        if ( c == 'N' )
        {
            if ( stage == 2 )
                throw MecError( "internal: non-dominance after right dominance at column " + std::to_string( col ) );
            if ( stage == 0 )
                rep.lo = col;
            rep.hi = col;
            stage  = 1;
        }
        if ( c == 'R' )
            stage = 2;
    }
    return rep;
}

/// Reference-assignment form over two row groups.
inline DominanceReport dominance_intervals ( const FragmentMatrix & M, std::span<const int> left_rows, std::span<const int> right_rows,
                                             const Assignment & reference, Label side, Epsilon eps )
{
    int lo = M.m() + 1, hi = 0;
    for ( int i : right_rows )
        lo = std::min( lo, M.row( i ).start );
    for ( int i : left_rows )
        hi = std::max( hi, M.row( i ).end() );
    if ( lo > hi )
    {
        DominanceReport rep;
        rep.first_col = lo;
        rep.last_col  = lo - 1;
        return rep;
    }
    return dominance_intervals( reference_counts( M, left_rows, reference, side, lo, hi ),
                                reference_counts( M, right_rows, reference, side, lo, hi ), lo, eps );
}

//
// rooted instances
//

/// Rows in start order: R_U = (lb, rb), left lower = [lc+1, lb], right lower = [rb, rc-1].
struct CenterCell
{
    int       root = 1;
    int       lc = -1, lb = 0, rb = 0, rc = 0;
    std::vector<RowRange> chunks;// 3 groups of K ranges: R_U, left lower, right lower
    Selection selection;         // upper = R_U chunks, lower = both lower ranges' chunks
    Label     side = Label::A;

    RowRange upper () const { return { lb + 1, rb }; }
    RowRange left_lower () const { return { lc + 1, lb + 1 }; }
    RowRange right_lower () const { return { rb, rc }; }
};

namespace detail {

struct Center
{
    CenterCell a, b;
    BitString  w_sigma, w_sigma_prime;// infix over [j_t, j_s]
    long       w_cost = 0;
    int        anchor_a = 0, anchor_b = 0;
};

inline void check_rooted ( const FragmentMatrix & M, int root )
{
    if ( root < 1 || root > M.m() )
        throw MecError( "rooted: root column " + std::to_string( root ) + " out of range" );
    for ( int i = 0; i < M.n(); ++i )
        if ( !M.row( i ).crosses( root ) )
            throw MecError( "rooted: row " + std::to_string( i + 1 ) + " misses root column " + std::to_string( root ) );
}

inline void keep_best ( std::vector<SolutionPair> & pool, SolutionPair s )
{
    for ( const auto & p : pool )
        if ( p.sigma == s.sigma && p.sigma_prime == s.sigma_prime )
            return;
    pool.push_back( std::move( s ) );
}

inline void sort_pool ( std::vector<SolutionPair> & pool, std::size_t keep )
{
    std::sort( pool.begin(), pool.end(), [] ( const SolutionPair & x, const SolutionPair & y ) { return better( x, y ); } );
    if ( pool.size() > keep )
        pool.resize( keep );
}

/// Center candidates on a matrix in start order, best infix cost first.
inline std::vector<Center> center_candidates ( const FragmentMatrix & M, int root, int j_t, int j_s, const Precision & prec )
{
    Precision local = prec;
    local.chunks_per_range *= prec.chunk_multiplier;
    SwcView   view( M, local );
    const int n = M.n(), m = M.m();

    std::vector<int> pos;
    if ( n <= prec.max_boundaries )
        for ( int i = 0; i < n; ++i )
            pos.push_back( i );
    else
    {
        std::set<int> g;
        for ( int k = 0; k < prec.max_boundaries; ++k )
            g.insert( int( std::lround( double( n - 1 ) * k / ( prec.max_boundaries - 1 ) ) ) );
        pos.assign( g.begin(), g.end() );
    }

    std::vector<Center> out;
    std::set<std::tuple<BitString, BitString, int, int>> seen;
    const auto anchors = view.anchors( prec.range_selections );

    auto make_side = [&] ( int anchor, int lc, int lb, int rb, int rc, const std::vector<char> * banned, Label side )
        -> std::optional<CenterCell> {
        CenterCell cc;
        cc.root = root;
        cc.lc   = lc;
        cc.lb   = lb;
        cc.rb   = rb;
        cc.rc   = rc;
        cc.side = side;
        auto u  = view.nearest( anchor, lb + 1, rb, banned );
        auto l1 = view.nearest( anchor, lc + 1, lb + 1, banned );
        auto l2 = view.nearest( anchor, rb, rc, banned );
        if ( !u || !l1 || !l2 )
            return std::nullopt;
        for ( auto r : { cc.upper(), cc.left_lower(), cc.right_lower() } )
            for ( const auto & ch : view.chunks( r.first, r.last ) )
                cc.chunks.push_back( ch );
        cc.selection.upper = *u;
        cc.selection.lower = *l1;
        cc.selection.lower.insert( cc.selection.lower.end(), l2->begin(), l2->end() );
        return cc;
    };

    for ( int lb : pos )
        for ( int rb : pos )
        {
            if ( rb < lb + 2 )
                continue;
            for ( int lc = -1; lc < lb; ++lc )
            {
                if ( lc >= 0 && n > prec.max_boundaries && !std::binary_search( pos.begin(), pos.end(), lc ) )
                    continue;
                for ( int rc = rb + 1; rc <= n; ++rc )
                {
                    if ( rc < n && n > prec.max_boundaries && !std::binary_search( pos.begin(), pos.end(), rc ) )
                        continue;
                    for ( int x : anchors )
                        for ( int y : anchors )
                        {
                            if ( x == y )
                                continue;
                            auto ca = make_side( x, lc, lb, rb, rc, nullptr, Label::A );
                            if ( !ca )
                                continue;
                            std::vector<char> banned( std::size_t( n ), 0 );
                            for ( int i : ca->selection.rows() )
                                banned[std::size_t( i )] = 1;
                            auto cb = make_side( y, lc, lb, rb, rc, &banned, Label::B );
                            if ( !cb )
                                continue;

                            Center c{ *ca, *cb, BitString( std::size_t( m ), '1' ), BitString( std::size_t( m ), '1' ), 0, x, y };
                            vote_columns( M, ca->selection, prec.eps, j_t, j_s, c.w_sigma );
                            vote_columns( M, cb->selection, prec.eps, j_t, j_s, c.w_sigma_prime );
                            c.w_sigma         = c.w_sigma.substr( std::size_t( j_t - 1 ), std::size_t( j_s - j_t + 1 ) );
                            c.w_sigma_prime   = c.w_sigma_prime.substr( std::size_t( j_t - 1 ), std::size_t( j_s - j_t + 1 ) );
                            if ( !seen.emplace( c.w_sigma, c.w_sigma_prime, x, y ).second )
                                continue;
                            BitString s( std::size_t( m ), '1' ), t( std::size_t( m ), '1' );
                            s.replace( std::size_t( j_t - 1 ), c.w_sigma.size(), c.w_sigma );
                            t.replace( std::size_t( j_t - 1 ), c.w_sigma_prime.size(), c.w_sigma_prime );
                            c.w_cost = cost_window( M, s, t, 0, n, j_t, j_s );
                            out.push_back( std::move( c ) );
                        }
                }
            }
        }

    std::stable_sort( out.begin(), out.end(), [] ( const Center & x, const Center & y ) {
        return std::tie( x.w_cost, x.w_sigma, x.w_sigma_prime ) < std::tie( y.w_cost, y.w_sigma, y.w_sigma_prime );
    } );
    if ( out.size() > std::size_t( prec.center_candidates ) )
        out.resize( std::size_t( prec.center_candidates ) );
    return out;
}

/// Candidate solutions of a rooted instance, best first, in input row order.
inline std::vector<SolutionPair> rooted_pool ( const FragmentMatrix & input, int root, const Precision & prec, std::size_t keep )
{
    const auto order = start_order( input );
    const auto M     = permute_rows( input, order );
    const int  n = M.n(), m = M.m();

    std::vector<SolutionPair> pool;
    auto add = [&] ( SolutionPair s ) {
        s = polish( M, std::move( s ) );
        keep_best( pool, std::move( s ) );
    };

    for ( int r : r_guesses( n, prec.eps ) )
        if ( std::min( r, n - r ) <= prec.small_r_cutoff )
            if ( auto s = small_case( M, r ) )
                add( std::move( *s ) );

    if ( n >= 3 )
    {
        int j_t = 1, j_s = m;
        for ( const auto & r : M.rows() )
        {
            j_t = std::max( j_t, r.start );
            j_s = std::min( j_s, r.end() );
        }
        const int w = j_s - j_t + 1;

        const auto right = column_slice( M, j_t, m );
        const auto left  = reversed( column_slice( M, 1, j_s ) );

        for ( const auto & c : center_candidates( M, root, j_t, j_s, prec ) )
        {
            DpOptions ro;
            ro.forced_cols = w;
            ro.forced_a    = c.w_sigma;
            ro.forced_b    = c.w_sigma_prime;
            ro.anchors_a   = std::vector<int>{ c.anchor_a };
            ro.anchors_b   = std::vector<int>{ c.anchor_b };

            DpOptions lo = ro;
            lo.forced_a  = reversed( c.w_sigma );
            lo.forced_b  = reversed( c.w_sigma_prime );
            lo.anchors_a = std::vector<int>{ n - 1 - c.anchor_a };
            lo.anchors_b = std::vector<int>{ n - 1 - c.anchor_b };

            const auto rr = run_dp_pair( right, prec, ro );
            const auto lr = run_dp_pair( left, prec, lo );
            const std::size_t top = 3;
            for ( std::size_t p = 0; p < std::min( top, lr.terminals.size() ); ++p )
                for ( std::size_t q = 0; q < std::min( top, rr.terminals.size() ); ++q )
                {
                    const auto ls = reversed( lr.terminals[p].sigma );
                    const auto lt = reversed( lr.terminals[p].sigma_prime );
                    add( evaluate( M, ls.substr( 0, std::size_t( j_t - 1 ) ) + rr.terminals[q].sigma,
                                   lt.substr( 0, std::size_t( j_t - 1 ) ) + rr.terminals[q].sigma_prime ) );
                }
        }
    }
    if ( pool.empty() )
        add( majority_complete( M, Assignment( std::size_t( n ), Label::A ) ) );

    sort_pool( pool, keep );
    for ( auto & s : pool )
    {
        s.assignment = unpermute( s.assignment, order );
        s.cost       = cost_fixed( input, s.sigma, s.sigma_prime, s.assignment );
    }
    return pool;
}

/// Map a solution of reversed(M) back to M.
inline SolutionPair unreverse ( const FragmentMatrix & M, const SolutionPair & s )
{
    SolutionPair out;
    out.sigma       = reversed( s.sigma );
    out.sigma_prime = reversed( s.sigma_prime );
    out.assignment.assign( s.assignment.rbegin(), s.assignment.rend() );
    out.cost = cost_fixed( M, out.sigma, out.sigma_prime, out.assignment );
    return out;
}

/// Best of a solver run on M and on the reversed instance. Equal costs keep the
/// forward answer; the cost is the same for M and reversed(M) by construction.
template < typename F >
SolutionPair symmetric ( const FragmentMatrix & M, F && solve )
{
    auto fwd = solve( M );
    auto bwd = unreverse( M, solve( reversed( M ) ) );
    return bwd.cost < fwd.cost ? bwd : fwd;
}

}// namespace detail

/// Every row crosses `root`: center cells vote the all-binary infix, and seeded
/// joint DP runs extend it to the right and (on the reversed slice) to the left.
inline SolutionPair solve_rooted ( const FragmentMatrix & M, int root, const Precision & prec )
{
    prec.check();
    detail::check_rooted( M, root );
    return detail::symmetric( M, [&] ( const FragmentMatrix & X ) {
        const int r = &X == &M ? root : M.m() + 1 - root;
        return detail::rooted_pool( X, r, prec, 1 ).front();
    } );
}

//
// subinterval-free instances
//

namespace detail {

struct Group
{
    std::vector<int>          rows;// input indices
    int                       root = 1;
    int                       first_col = 1, last_col = 0;
    std::vector<SolutionPair> cands;// over the group's rows; assignment indexed like `rows`
};

/// Junction of two neighbouring groups on their shared columns for one side.
/// Outside I the dominant candidate's bits are copied, inside I the rows of both
/// groups labelled `side` vote with generalized majority (one chunk per row).
inline void junction ( const FragmentMatrix & M, const Group & g1, const SolutionPair & p, const Group & g2, const SolutionPair & q,
                       Label side, int widen, Epsilon eps, BitString & out )
{
    const int lo = g2.first_col, hi = g1.last_col;
    if ( lo > hi )
        return;
    Assignment ref( std::size_t( M.n() ), other( side ) );
    for ( std::size_t k = 0; k < g1.rows.size(); ++k )
        ref[std::size_t( g1.rows[k] )] = p.assignment[k];
    for ( std::size_t k = 0; k < g2.rows.size(); ++k )
        ref[std::size_t( g2.rows[k] )] = q.assignment[k];

    const auto rep = dominance_intervals( M, g1.rows, g2.rows, ref, side, eps );
    int        ilo = rep.lo, ihi = rep.hi;
    if ( rep.empty() )
    {
        // split between the last left-dominant and first right-dominant column
        ilo = hi + 1;
        for ( int col = lo; col <= hi; ++col )
            if ( rep.pattern[std::size_t( col - lo )] == 'R' )
            {
                ilo = col;
                break;
            }
        ihi = ilo - 1;
    }
    if ( widen > 0 )
    {
        if ( ilo > ihi )
            ihi = ilo - 1;
        ilo = std::max( lo, ilo - widen );
        ihi = std::min( hi, ihi + widen );
    }

    const auto & ps = side == Label::A ? p.sigma : p.sigma_prime;
    const auto & qs = side == Label::A ? q.sigma : q.sigma_prime;
    for ( int col = lo; col <= hi; ++col )
    {
        char bit;
        if ( col >= ilo && col <= ihi )
        {
            std::vector<ChunkVote> votes;
            for ( int i : g1.rows )
                if ( ref[std::size_t( i )] == side )
                    votes.push_back( ChunkVote{ 1, { M.at( i, col ) } } );
            for ( int i : g2.rows )
                if ( ref[std::size_t( i )] == side )
                    votes.push_back( ChunkVote{ 1, { M.at( i, col ) } } );
            bit = generalized_majority( votes ) ? '1' : '0';
        }
        else
            bit = col < ilo ? ps[std::size_t( col - 1 )] : qs[std::size_t( col - 1 )];
        out[std::size_t( col - 1 )] = bit;
    }
}

inline long group_cost ( const FragmentMatrix & M, const Group & g, const BitString & s, const BitString & t )
{
    long c = 0;
    for ( int i : g.rows )
        c += std::min( row_dist( M.row( i ), s ), row_dist( M.row( i ), t ) );
    return c;
}

inline long rows_window_cost ( const FragmentMatrix & M, const Group & g1, const Group & g2, const BitString & s, const BitString & t,
                               int lo, int hi )
{
    long c = 0;
    for ( const auto * g : { &g1, &g2 } )
        for ( int i : g->rows )
            c += std::min( row_dist( M.row( i ), s, lo, hi ), row_dist( M.row( i ), t, lo, hi ) );
    return c;
}

inline SolutionPair subinterval_free_once ( const FragmentMatrix & M, const Precision & prec )
{
    const auto q = build_qsequence( M );
    const int  m = M.m();
    if ( q.columns.size() == 1 )
        return rooted_pool( M, q.columns[0], prec, 1 ).front();

    std::vector<Group> groups( q.columns.size() );
    for ( std::size_t j = 0; j < groups.size(); ++j )
    {
        groups[j].root      = q.columns[j];
        groups[j].first_col = m + 1;
    }
    for ( int i = 0; i < M.n(); ++i )
    {
        auto & g = groups[std::size_t( q.root_of[std::size_t( i )] )];
        g.rows.push_back( i );
        g.first_col = std::min( g.first_col, M.row( i ).start );
        g.last_col  = std::max( g.last_col, M.row( i ).end() );
    }
    for ( auto & g : groups )
    {
        std::vector<Row> rows;
        for ( int i : g.rows )
            rows.push_back( M.row( i ) );
        const FragmentMatrix sub( m, std::move( rows ) );
        for ( auto & s : rooted_pool( sub, g.root, prec, std::size_t( prec.chain_candidates ) ) )
        {
            auto swapped = s;
            std::swap( swapped.sigma, swapped.sigma_prime );
            for ( auto & l : swapped.assignment )
                l = other( l );
            g.cands.push_back( std::move( s ) );
            g.cands.push_back( std::move( swapped ) );
        }
    }

    // outer DP: state = candidate of the current group; strings are fixed up to
    // the end of the current group's shared columns with its left neighbour
    struct State
    {
        long      value = 0;// cost of all rows in earlier groups
        BitString s, t;
    };
    std::vector<State> cur;
    for ( const auto & c : groups[0].cands )
        cur.push_back( State{ 0, c.sigma, c.sigma_prime } );

    for ( std::size_t j = 0; j + 1 < groups.size(); ++j )
    {
        const auto &       g1 = groups[j];
        const auto &       g2 = groups[j + 1];
        std::vector<State> next( g2.cands.size() );
        std::vector<char>  have( g2.cands.size(), 0 );
        for ( std::size_t k = 0; k < cur.size(); ++k )
            for ( std::size_t k2 = 0; k2 < g2.cands.size(); ++k2 )
            {
                const auto & p = g1.cands[k];
                const auto & c = g2.cands[k2];
                State        st;
                bool         first = true;
                for ( int widen = 0; widen <= prec.max_interval_width; ++widen )
                {
                    BitString s = cur[k].s, t = cur[k].t;
                    // columns from the new group's start on come from its candidate
                    for ( int col = std::max( 1, g2.first_col ); col <= m; ++col )
                    {
                        s[std::size_t( col - 1 )] = c.sigma[std::size_t( col - 1 )];
                        t[std::size_t( col - 1 )] = c.sigma_prime[std::size_t( col - 1 )];
                    }
                    junction( M, g1, p, g2, c, Label::A, widen, prec.eps, s );
                    junction( M, g1, p, g2, c, Label::B, widen, prec.eps, t );
                    const long local = rows_window_cost( M, g1, g2, s, t, g2.first_col, g1.last_col );
                    State      cand{ local, std::move( s ), std::move( t ) };
                    if ( first || cand.value < st.value )
                        st = std::move( cand );
                    first = false;
                    if ( g2.first_col > g1.last_col )
                        break;
                }
                st.value = cur[k].value + group_cost( M, g1, st.s, st.t );
                if ( !have[k2] || st.value < next[k2].value
                     || ( st.value == next[k2].value && std::tie( st.s, st.t ) < std::tie( next[k2].s, next[k2].t ) ) )
                {
                    next[k2] = std::move( st );
                    have[k2] = 1;
                }
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
    for ( int r : r_guesses( M.n(), prec.eps ) )
        if ( std::min( r, M.n() - r ) <= prec.small_r_cutoff )
            if ( auto s = small_case( M, r ) )
                if ( better( *s, *best ) )
                    best = std::move( *s );
    return *best;
}

}// namespace detail

/// Roots from the q-sequence are solved as rooted instances and chained left
/// to right; shared columns follow the dominant side, with direct voting in
/// the non-dominance interval.
inline SolutionPair solve_subinterval_free ( const FragmentMatrix & M, const Precision & prec )
{
    prec.check();
    if ( !is_subinterval_free( M ) )
        throw MecError( "subinterval-free: instance has a row contained in another" );
    const auto q = build_qsequence( M );
    if ( q.columns.size() == 1 )
        return solve_rooted( M, q.columns[0], prec );
    return detail::symmetric( M, [&] ( const FragmentMatrix & X ) { return detail::subinterval_free_once( X, prec ); } );
}

}// namespace gmec

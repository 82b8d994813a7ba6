#pragma once

// Benchmark runner: generated instances, solver runs, oracle ratios, CSV.

#include <atomic>
#include <map>
#include <sstream>
#include <chrono>
#include <numeric>
#include <thread>

#include "generator.hpp"
#include "solvers.hpp"

namespace gmec {

struct BenchCell
{
    Family family = Family::Swc;
    int    n = 12, m = 8;
    double flip_rate = 0.1;
};

struct BenchConfig
{
    std::vector<BenchCell>   cells;
    std::vector<std::string> algos;// empty: the family's default solvers
    int                      seeds     = 5;
    std::uint64_t            seed      = 1;
    Precision                precision;
    OracleBudget             budget;
    int                      jobs      = 1;
    bool                     timings   = false;
};

struct BenchRow
{
    std::string         instance;
    Family              family = Family::Swc;
    int                 n = 0, m = 0;
    std::string         algo;
    std::uint64_t       seed = 0;
    std::optional<long> cost;            // empty when the solver failed
    std::optional<long> opt;             // empty when over the oracle budget
    long                planted = 0;
    double              ms      = 0;
    std::string         params;
    std::string         error;
    bool                recomputed_ok = true;

    bool opt_zero () const { return opt && *opt == 0; }

    /// Exact ratio cost/opt in lowest terms, or a flag.
    std::string ratio_text () const
    {
        if ( !cost )
            return "failed";
        if ( !opt )
            return "over-budget";
        if ( *opt == 0 )
            return "opt-zero";
        const long g = std::gcd( *cost, *opt );
        return std::to_string( *cost / g ) + "/" + std::to_string( *opt / g );
    }

    std::optional<double> ratio () const
    {
        if ( !cost || !opt || *opt == 0 )
            return std::nullopt;
        return double( *cost ) / double( *opt );
    }
};

inline std::vector<std::string> default_algorithms ( Family f )
{
    switch ( f )
    {
    case Family::Binary:
        return { "swc", "dp-pair", "general" };
    case Family::Swc:
        return { "swc", "dp-single", "dp-pair", "general" };
    case Family::AdversarialDensity:
        return { "swc", "dp-pair" };
    case Family::Rooted:
        return { "rooted", "general" };
    case Family::SubintervalFree:
        return { "subinterval-free", "general" };
    case Family::General:
        return { "general" };
    }
    return {};
}

/// Named suites. "default" covers every family at and without noise.
inline BenchConfig named_suite ( const std::string & name )
{
    BenchConfig c;
    if ( name == "default" )
    {
        c.seeds = 3;
        for ( double f : { 0.0, 0.1 } )
        {
            c.cells.push_back( { Family::Binary, 10, 6, f } );
            c.cells.push_back( { Family::Swc, 12, 8, f } );
            c.cells.push_back( { Family::AdversarialDensity, 12, 8, f } );
            c.cells.push_back( { Family::Rooted, 12, 10, f } );
            c.cells.push_back( { Family::SubintervalFree, 12, 12, f } );
            c.cells.push_back( { Family::General, 12, 12, f } );
        }
    }
    else if ( name == "quick" )
    {
        c.seeds = 2;
        c.cells.push_back( { Family::Swc, 8, 6, 0.1 } );
        c.cells.push_back( { Family::Rooted, 8, 6, 0.1 } );
        c.cells.push_back( { Family::SubintervalFree, 8, 8, 0.1 } );
    }
    else if ( name == "gates" )
    {
        c.seeds = 30;
        c.cells.push_back( { Family::Swc, 14, 8, 0.1 } );
        c.cells.push_back( { Family::Rooted, 14, 8, 0.1 } );
        c.cells.push_back( { Family::SubintervalFree, 14, 8, 0.1 } );
        c.algos = {};
    }
    else
        throw MecError( "unknown suite '" + name + "' (default, quick, gates)" );
    return c;
}

inline std::string instance_name ( const BenchCell & c, std::uint64_t seed )
{
    std::ostringstream s;
    s << to_string( c.family ) << "-n" << c.n << "-m" << c.m << "-f" << c.flip_rate << "-s" << seed;
    return s.str();
}

inline std::vector<BenchRow> bench_suite ( const BenchConfig & cfg )
{
    cfg.precision.check();

    struct Job
    {
        BenchCell     cell;
        std::uint64_t seed;
        std::string   algo;
    };
    std::vector<Job> jobs;
    for ( const auto & cell : cfg.cells )
        for ( int k = 0; k < cfg.seeds; ++k )
            for ( const auto & a : cfg.algos.empty() ? default_algorithms( cell.family ) : cfg.algos )
                jobs.push_back( { cell, cfg.seed + std::uint64_t( k ), a } );

    std::vector<BenchRow> rows( jobs.size() );
    auto run = [&] ( std::size_t j ) {
        const auto & job = jobs[j];
        GenSpec      spec;
        spec.n         = job.cell.n;
        spec.m         = job.cell.m;
        spec.flip_rate = job.cell.flip_rate;
        spec.family    = job.cell.family;
        spec.seed      = job.seed;

        BenchRow & row = rows[j];
        row.instance   = instance_name( job.cell, job.seed );
        row.family     = job.cell.family;
        row.n          = spec.n;
        row.m          = spec.m;
        row.algo       = job.algo;
        row.seed       = job.seed;
        row.params     = describe( cfg.precision );
        try
        {
            const auto g = generate( spec );
            row.planted  = g.planted.cost;
            try
            {
                row.opt = exact_bipartition( g.matrix, cfg.budget ).cost;
            }
            catch ( const BudgetExceeded & )
            {
            }
            SolveRequest q;
            q.algo      = job.algo;
            q.precision = cfg.precision;
            q.budget    = cfg.budget;
            q.root      = spec.root_column();
            if ( job.algo == "rooted" )
                row.params += ";root=" + std::to_string( q.root );
            const auto t0  = std::chrono::steady_clock::now();
            const auto sol = run_algorithm( g.matrix, q );
            row.ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 ).count();
            // re-derive from the emitted strings and labels
            row.cost          = cost_fixed( g.matrix, sol.sigma, sol.sigma_prime, sol.assignment );
            row.recomputed_ok = *row.cost == sol.cost && int( sol.assignment.size() ) == g.matrix.n();
        }
        catch ( const std::exception & e )
        {
            row.error = e.what();
        }
    };

    const int workers = std::max( 1, std::min<int>( cfg.jobs, int( jobs.size() ) ) );
    if ( workers == 1 )
        for ( std::size_t j = 0; j < jobs.size(); ++j )
            run( j );
    else
    {
        std::atomic<std::size_t> next{ 0 };
        std::vector<std::thread> pool;
        for ( int w = 0; w < workers; ++w )
            pool.emplace_back( [&] {
                for ( std::size_t j; ( j = next.fetch_add( 1 ) ) < jobs.size(); )
                    run( j );
            } );
        for ( auto & t : pool )
            t.join();
    }

    std::stable_sort( rows.begin(), rows.end(), [] ( const BenchRow & x, const BenchRow & y ) {
        return std::tuple( to_string( x.family ), x.n, x.m, x.algo, x.seed, x.instance )
               < std::tuple( to_string( y.family ), y.n, y.m, y.algo, y.seed, y.instance );
    } );
    return rows;
}

inline const char * csv_header = "instance,family,n,m,algo,seed,cost,opt,ratio,ms,params";

/// Timings are left empty unless requested, so reports stay byte-identical across runs.
inline void write_csv ( std::ostream & out, const std::vector<BenchRow> & rows, bool timings )
{
    out << csv_header << '\n';
    for ( const auto & r : rows )
    {
        out << r.instance << ',' << to_string( r.family ) << ',' << r.n << ',' << r.m << ',' << r.algo << ',' << r.seed << ',';
        out << ( r.cost ? std::to_string( *r.cost ) : "" ) << ',';
        out << ( r.opt ? std::to_string( *r.opt ) : "over-budget" ) << ',';
        out << r.ratio_text() << ',';
        if ( timings )
        {
            std::ostringstream ms;
            ms.setf( std::ios::fixed );
            ms.precision( 3 );
            ms << r.ms;
            out << ms.str();
        }
        out << ',' << r.params << '\n';
    }
}

struct AlgoSummary
{
    std::string algo;
    int         cells = 0, failed = 0, over_budget = 0, opt_zero = 0;
    int         defects = 0;     // cost > 0 on an OPT-0 instance
    int         below_opt = 0;   // cost < OPT, never expected
    int         recompute_bad = 0;
    double      median = 0, p95 = 0, max = 0;
    int         rated = 0;
};

inline double quantile ( std::vector<double> v, double q )
{
    if ( v.empty() )
        return 0;
    std::sort( v.begin(), v.end() );
    // nearest-rank
    const auto k = std::size_t( std::ceil( q * double( v.size() ) ) );
    return v[std::min( v.size() - 1, k == 0 ? 0 : k - 1 )];
}

inline double median ( std::vector<double> v )
{
    if ( v.empty() )
        return 0;
    std::sort( v.begin(), v.end() );
    const auto h = v.size() / 2;
    return v.size() % 2 ? v[h] : ( v[h - 1] + v[h] ) / 2;
}

inline std::vector<AlgoSummary> summarize ( const std::vector<BenchRow> & rows )
{
    std::map<std::string, std::pair<AlgoSummary, std::vector<double>>> by;
    for ( const auto & r : rows )
    {
        auto & [s, ratios] = by[r.algo];
        s.algo             = r.algo;
        ++s.cells;
        if ( !r.cost )
        {
            ++s.failed;
            continue;
        }
        s.recompute_bad += !r.recomputed_ok;
        if ( !r.opt )
        {
            ++s.over_budget;
            continue;
        }
        s.below_opt += *r.cost < *r.opt;
        if ( r.opt_zero() )
        {
            ++s.opt_zero;
            s.defects += *r.cost > 0;
            continue;
        }
        ratios.push_back( *r.ratio() );
    }
    std::vector<AlgoSummary> out;
    for ( auto & [name, entry] : by )
    {
        auto & [s, ratios] = entry;
        s.rated            = int( ratios.size() );
        s.median           = median( ratios );
        s.p95              = quantile( ratios, 0.95 );
        s.max              = ratios.empty() ? 0 : *std::max_element( ratios.begin(), ratios.end() );
        out.push_back( s );
    }
    return out;
}

inline void write_summary ( std::ostream & out, const std::vector<AlgoSummary> & sums )
{
    out << "algo,cells,rated,median,p95,max,opt_zero,defects,below_opt,failed,over_budget\n";
    for ( const auto & s : sums )
    {
        std::ostringstream line;
        line.setf( std::ios::fixed );
        line.precision( 4 );
        line << s.algo << ',' << s.cells << ',' << s.rated << ',' << s.median << ',' << s.p95 << ',' << s.max << ',' << s.opt_zero
             << ',' << s.defects << ',' << s.below_opt << ',' << s.failed << ',' << s.over_budget;
        out << line.str() << '\n';
    }
}

}// namespace gmec

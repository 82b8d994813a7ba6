// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances are fixed here, not taken from the command line.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <gmec/bench.hpp>
#include <gmec/gmec.hpp>

#ifndef GMEC_CLI
#error "GMEC_CLI must name the gmec executable"
#endif

using namespace gmec;

namespace {

struct Outcome
{
    bool        pass = true;
    std::string detail;
};

constexpr std::array all_families{ Family::Binary,  Family::Swc,     Family::SubintervalFree,
                                   Family::Rooted,  Family::General, Family::AdversarialDensity };

GenSpec random_spec ( std::mt19937_64 & rng, int max_n, int max_m, double flip )
{
    GenSpec s;
    s.family    = all_families[std::uniform_int_distribution<std::size_t>( 0, all_families.size() - 1 )( rng )];
    s.n         = std::uniform_int_distribution<int>( 2, max_n )( rng );
    s.m         = std::uniform_int_distribution<int>( 1, max_m )( rng );
    s.flip_rate = flip < 0 ? std::uniform_real_distribution<double>( 0, 0.5 )( rng ) : flip;
    s.seed      = rng();
    return s;
}

// 1: the two exact oracles agree
Outcome oracle_cross_validation ()
{
    std::mt19937_64 rng( 101 );
    int             mismatches = 0;
    for ( int k = 0; k < 500; ++k )
    {
        const auto M = generate( random_spec( rng, 10, 6, -1 ) ).matrix;
        mismatches += exact_bipartition( M ).cost != exact_strings( M ).cost;
    }
    return { mismatches == 0, "500 instances, n<=10, m<=6, cost mismatches=" + std::to_string( mismatches ) + " (tolerance 0)" };
}

// 2: under a fixed assignment the cost separates into one term per string,
// so the best pair is the best sigma for A plus the best sigma' for B
Outcome majority_optimality ()
{
    std::mt19937_64 rng( 202 );
    long            beaten = 0, checked = 0;
    for ( int k = 0; k < 200; ++k )
    {
        const auto M = generate( random_spec( rng, 8, 6, -1 ) ).matrix;
        const int  n = M.n(), m = M.m();
        std::vector<std::vector<long>> d( std::size_t( 1 << m ), std::vector<long>( std::size_t( n ) ) );
        for ( unsigned x = 0; x < ( 1u << m ); ++x )
        {
            std::string s;
            for ( int c = 0; c < m; ++c )
                s.push_back( ( x >> c & 1 ) ? '1' : '0' );
            for ( int i = 0; i < n; ++i )
                d[x][std::size_t( i )] = row_dist( M.row( i ), s );
        }
        for ( unsigned mask = 0; mask < ( 1u << n ); ++mask )
        {
            Assignment a( std::size_t( n ), Label::A );
            for ( int i = 0; i < n; ++i )
                a[std::size_t( i )] = ( mask >> i & 1 ) ? Label::B : Label::A;
            long best_a = -1, best_b = -1;
            for ( const auto & row : d )
            {
                long ca = 0, cb = 0;
                for ( int i = 0; i < n; ++i )
                    ( a[std::size_t( i )] == Label::A ? ca : cb ) += row[std::size_t( i )];
                best_a = best_a < 0 ? ca : std::min( best_a, ca );
                best_b = best_b < 0 ? cb : std::min( best_b, cb );
            }
            const auto mc = majority_complete( M, a );
            beaten += best_a + best_b < mc.cost;
            ++checked;
        }
    }
    return { beaten == 0, "200 instances, " + std::to_string( checked ) + " assignments, beaten=" + std::to_string( beaten ) + " (tolerance 0)" };
}

// 3: flip rate 0 gives cost 0
Outcome zero_noise ()
{
    const std::vector<std::pair<std::string, Family>> runs{ { "swc", Family::Swc },
                                                            { "dp-single", Family::Swc },
                                                            { "dp-pair", Family::Swc },
                                                            { "rooted", Family::Rooted },
                                                            { "subinterval-free", Family::SubintervalFree },
                                                            { "general", Family::General } };
    std::mt19937_64    rng( 303 );
    std::ostringstream detail;
    bool               pass = true;
    for ( const auto & [algo, family] : runs )
    {
        int nonzero = 0;
        for ( int k = 0; k < 30; ++k )
        {
            GenSpec spec;
            spec.family    = family;
            spec.n         = std::uniform_int_distribution<int>( 4, 16 )( rng );
            spec.m         = std::uniform_int_distribution<int>( 4, 16 )( rng );
            spec.flip_rate = 0;
            spec.seed      = rng();
            SolveRequest q;
            q.algo = algo;
            q.root = spec.root_column();
            nonzero += run_algorithm( generate( spec ).matrix, q ).cost != 0;
        }
        pass = pass && nonzero == 0;
        detail << algo << "=" << nonzero << " ";
    }
    detail << "nonzero of 30 each, n<=16, m<=16 (tolerance 0)";
    return { pass, detail.str() };
}

// 4: ratio gates against exact_bipartition
Outcome approximation_gates ( std::vector<BenchRow> & audit )
{
    const std::vector<std::pair<std::string, Family>> runs{ { "dp-pair", Family::Swc },
                                                            { "rooted", Family::Rooted },
                                                            { "subinterval-free", Family::SubintervalFree } };
    std::ostringstream detail;
    detail.setf( std::ios::fixed );
    detail.precision( 3 );
    bool pass = true;
    for ( const auto & [algo, family] : runs )
    {
        BenchConfig cfg;
        cfg.cells = { { family, 14, 8, 0.1 } };
        cfg.algos = { algo };
        cfg.seeds = 30;
        cfg.seed  = 1;
        const auto rows = bench_suite( cfg );
        const auto s    = summarize( rows ).front();
        audit.insert( audit.end(), rows.begin(), rows.end() );
        const bool ok = s.failed == 0 && s.over_budget == 0 && s.defects == 0 && s.median <= 1.2 && s.max <= 1.5;
        pass          = pass && ok;
        detail << algo << ": median=" << s.median << " max=" << s.max << " rated=" << s.rated << " opt-zero=" << s.opt_zero
               << " defects=" << s.defects << "; ";
    }
    detail << "n=14, m=8, flip 0.1, 30 seeds (median<=1.2, max<=1.5)";
    return { pass, detail.str() };
}

// 5: length-class index properties
Outcome length_class_fuzz ()
{
    std::mt19937_64 rng( 505 );
    int             violations = 0, max_m = 0;
    for ( int k = 0; k < 1000; ++k )
    {
        GenSpec spec  = random_spec( rng, 40, 1024, 0.1 );
        spec.m        = k < 10 ? 1024 - k : spec.m;
        max_m         = std::max( max_m, spec.m );
        const auto M  = generate( spec ).matrix;
        try
        {
            verify_index( M, build_index( M ) );
        }
        catch ( const MecError & )
        {
            ++violations;
        }
    }
    return { violations == 0, "1000 instances, m up to " + std::to_string( max_m ) + ", violations=" + std::to_string( violations ) + " (tolerance 0)" };
}

// 6: weighted-majority error on a planted dense/sparse instance. One side's
// rows are mostly short, the long ones sit in L and X. Every column holds an
// exact share p of zeros among that side's rows; the planted bit is 0.
Outcome weighted_majority_error ()
{
    constexpr int    side_rows = 120, other_rows = 40, m = 16, short_len = 4;
    constexpr double tolerance = 1.3;
    std::ostringstream detail;
    detail.setf( std::ios::fixed );
    detail.precision( 3 );
    bool pass = true;
    for ( double p : { 0.6, 0.75, 0.9 } )
    {
        std::mt19937_64 rng( 606 + std::uint64_t( p * 100 ) );
        const Epsilon   eps{ 1, 2 };
        const int       upper_rows = int( eps.upper_count( side_rows ) );

        // standard order: short rows first, then full rows
        std::vector<int> lengths;
        for ( int i = 0; i < side_rows; ++i )
            lengths.push_back( i < upper_rows ? short_len : m );
        std::vector<std::string> bits( side_rows );
        for ( int i = 0; i < side_rows; ++i )
            bits[std::size_t( i )].assign( std::size_t( lengths[std::size_t( i )] ), '1' );
        for ( int col = 1; col <= m; ++col )
        {
            std::vector<int> crossing;
            for ( int i = 0; i < side_rows; ++i )
                if ( lengths[std::size_t( i )] >= col )
                    crossing.push_back( i );
            std::shuffle( crossing.begin(), crossing.end(), rng );
            const auto zeros = std::size_t( std::lround( p * double( crossing.size() ) ) );
            for ( std::size_t k = 0; k < zeros; ++k )
                bits[std::size_t( crossing[k] )][std::size_t( col - 1 )] = '0';
        }

        // the other side's rows are interleaved and carry the complement
        std::vector<Row> rows;
        Assignment       labels;
        for ( int i = 0, o = 0; i < side_rows; ++i )
        {
            rows.push_back( Row{ 1, bits[std::size_t( i )] } );
            labels.push_back( Label::A );
            if ( i % 3 == 2 && o < other_rows )
            {
                rows.push_back( Row{ 1, std::string( std::size_t( lengths[std::size_t( i )] ), '1' ) } );
                labels.push_back( Label::B );
                ++o;
            }
        }
        const FragmentMatrix M( m, std::move( rows ) );
        const auto           t   = build_trisection( M, labels, Label::A, eps );
        const auto           sub = build_subdivision( t, 4 );
        std::vector<char>    banned( std::size_t( M.n() ) );
        for ( int i = 0; i < M.n(); ++i )
            banned[std::size_t( i )] = labels[std::size_t( i )] != Label::A;

        // columns every L row crosses; U rows only reach the first few
        int last_col = m;
        for ( int i = t.L.first; i < t.L.last; ++i )
            if ( !banned[std::size_t( i )] )
                last_col = std::min( last_col, M.row( i ).end() );

        std::vector<double> err( std::size_t( m + 1 ), 0 );
        constexpr int       draws = 1000;
        for ( int d = 0; d < draws; ++d )
        {
            Selection sel;
            if ( !detail::draw_selection( sub, 8, banned, rng, sel ) )
                return { false, "selection draw failed" };
            for ( int col = 1; col <= m; ++col )
            {
                const int vote = weighted_majority( M, col, sel, eps );
                for ( int i = 0; i < M.n(); ++i )
                    if ( !banned[std::size_t( i )] && M.row( i ).crosses( col ) )
                        err[std::size_t( col )] += ( M.at( i, col ) == Symbol::One ? 1 : 0 ) != vote;
            }
        }
        double worst = 0;
        int    cols  = 0;
        for ( int col = 1; col <= m; ++col )
        {
            if ( col > last_col )
                continue;
            long opt = 0;
            for ( int i = 0; i < M.n(); ++i )
                if ( !banned[std::size_t( i )] && M.row( i ).crosses( col ) )
                    opt += M.at( i, col ) == Symbol::One;
            const double ratio = err[std::size_t( col )] / draws / double( std::max<long>( opt, 1 ) );
            worst              = std::max( worst, ratio );
            ++cols;
        }
        pass = pass && worst <= tolerance;
        detail << "p=" << p << " worst column ratio=" << worst << " over " << cols << " columns; ";
    }
    detail << "K=4, S=8, 1000 selections (tolerance " << tolerance << ")";
    return { pass, detail.str() };
}

// 7: repeated CLI runs write identical files
std::string slurp ( const std::filesystem::path & p )
{
    std::ifstream in( p, std::ios::binary );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_determinism ()
{
    namespace fs   = std::filesystem;
    const auto dir = fs::temp_directory_path() / ( "gmec-accept-" + std::to_string( std::random_device{}() ) );
    fs::create_directories( dir );
    const std::string cli = GMEC_CLI;
    auto path = [&] ( const std::string & name ) { return ( dir / name ).string(); };

    const std::vector<std::string> commands{
        "gen --family swc --n 12 --m 8 --flip-rate 0.1 --seed 7 --out {}/inst.mec --truth {}/truth.sol",
        "gen --family general --n 10 --m 12 --seed 9 --out {}/gen.mec",
        "gen --family rooted --n 10 --m 9 --seed 4 --root 5 --out {}/rooted.mec",
        "solve {0}/inst.mec --algo dp-pair --seed 3 --out {}/dp.sol",
        "solve {0}/inst.mec --algo swc --json --out {}/swc.json",
        "solve {0}/gen.mec --algo general --out {}/general.sol",
        "solve {0}/rooted.mec --algo rooted --root 5 --out {}/rooted.sol",
        "compare {0}/inst.mec --algos swc,dp-single,dp-pair,general --json",
        "inspect {0}/gen.mec --length-classes",
        "bench --suite default --seed 7 --out {}/bench.csv --summary {}/summary.csv",
    };
    auto expand = [&] ( std::string c, const std::string & out_dir ) {
        // inputs live in run "a"; outputs go to the run's own directory
        for ( std::size_t at; ( at = c.find( "{0}" ) ) != std::string::npos; )
            c.replace( at, 3, path( "a" ) );
        for ( std::size_t at; ( at = c.find( "{}" ) ) != std::string::npos; )
            c.replace( at, 2, out_dir );
        return c;
    };

    int failures = 0, files = 0, differing = 0;
    for ( const char * run : { "a", "b" } )
    {
        fs::create_directories( dir / run );
        for ( std::size_t k = 0; k < commands.size(); ++k )
        {
            const auto line = cli + " " + expand( commands[k], path( run ) ) + " > " + path( run ) + "/stdout-" + std::to_string( k ) + ".txt 2>&1";
            failures += std::system( line.c_str() ) != 0;
        }
    }
    for ( const auto & e : fs::directory_iterator( dir / "a" ) )
    {
        ++files;
        differing += slurp( e.path() ) != slurp( dir / "b" / e.path().filename() );
    }
    fs::remove_all( dir );
    return { failures == 0 && differing == 0 && files >= 10,
             std::to_string( commands.size() ) + " commands twice, " + std::to_string( files ) + " files, differing="
                 + std::to_string( differing ) + ", failed runs=" + std::to_string( failures ) + " (tolerance 0)" };
}

// 8: no solver below OPT, every cost matches recomputation
Outcome never_below_opt ( std::vector<BenchRow> audit )
{
    for ( const char * suite : { "default", "quick" } )
    {
        auto cfg  = named_suite( suite );
        cfg.seed  = 8;
        auto rows = bench_suite( cfg );
        audit.insert( audit.end(), rows.begin(), rows.end() );
    }
    // a wider cross of algorithms over families they accept
    BenchConfig wide;
    wide.seeds = 5;
    wide.cells = { { Family::Swc, 10, 8, 0.15 }, { Family::Binary, 9, 6, 0.2 }, { Family::AdversarialDensity, 12, 8, 0.1 } };
    wide.algos = { "swc", "dp-single", "dp-pair", "general", "exact-strings" };
    auto rows  = bench_suite( wide );
    audit.insert( audit.end(), rows.begin(), rows.end() );

    int checked = 0, below = 0, mismatched = 0, failed = 0;
    for ( const auto & r : audit )
    {
        if ( !r.cost )
        {
            ++failed;
            continue;
        }
        mismatched += !r.recomputed_ok;
        if ( !r.opt )
            continue;
        ++checked;
        below += *r.cost < *r.opt;
    }
    return { below == 0 && mismatched == 0 && failed == 0,
             std::to_string( audit.size() ) + " cells, " + std::to_string( checked ) + " within budget, below OPT=" + std::to_string( below )
                 + ", recompute mismatches=" + std::to_string( mismatched ) + ", failed=" + std::to_string( failed ) + " (tolerance 0)" };
}

}// namespace

int main ()
{
    std::vector<BenchRow> audit;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        { "oracle cross-validation", oracle_cross_validation },
        { "majority optimality", majority_optimality },
        { "zero-noise recovery", zero_noise },
        { "approximation gates", [&] { return approximation_gates( audit ); } },
        { "length-class fuzz", length_class_fuzz },
        { "weighted-majority error", weighted_majority_error },
        { "CLI determinism", cli_determinism },
        { "never below OPT", [&] { return never_below_opt( audit ); } },
    };

    int failed = 0;
    for ( std::size_t k = 0; k < criteria.size(); ++k )
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome    o;
        try
        {
            o = criteria[k].second();
        }
        catch ( const std::exception & e )
        {
            o = { false, std::string( "exception: " ) + e.what() };
        }
        const double s = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
        failed += !o.pass;
        std::printf( "%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str(), s );
        std::fflush( stdout );
    }
    return failed ? 1 : 0;
}

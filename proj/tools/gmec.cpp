// gmec: command-line front end for the solver suite.
//
// exit codes: 0 success, 1 solver or input error, 2 usage error

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <gmec/gmec.hpp>

using namespace gmec;
using nlohmann::json;

namespace {

Epsilon parse_epsilon ( const std::string & text )
{
    Epsilon e;
    const auto slash = text.find( '/' );
    try
    {
        if ( slash == std::string::npos )
        {
            // decimal: accept exact reciprocals of integers and tenths
            const double v = std::stod( text );
            e              = Epsilon{ int( std::lround( v * 1000 ) ), 1000 };
            const int g    = std::gcd( e.num, e.den );
            e.num /= g;
            e.den /= g;
        }
        else
            e = Epsilon{ std::stoi( text.substr( 0, slash ) ), std::stoi( text.substr( slash + 1 ) ) };
    }
    catch ( const std::logic_error & )
    {
        throw CLI::ValidationError( "--epsilon", "expected a fraction like 1/2 or a decimal like 0.25" );
    }
    try
    {
        e.check();
    }
    catch ( const MecError & err )
    {
        throw CLI::ValidationError( "--epsilon", err.what() );
    }
    return e;
}

struct PrecisionFlags
{
    std::string epsilon = "1/2";
    Precision   p;

    void add ( CLI::App * app, bool with_seed = true )
    {
        app->add_option( "--epsilon", epsilon, "precision epsilon in (0, 1/2], as a/b or decimal" )->capture_default_str();
        app->add_option( "--chunks", p.chunks_per_range, "chunks per row range (K)" )->capture_default_str()->check( CLI::PositiveNumber );
        app->add_option( "--samples-per-chunk", p.rows_per_chunk, "selected rows per chunk (S)" )->capture_default_str()->check( CLI::PositiveNumber );
        app->add_option( "--trials", p.selection_trials, "random selection trials per guess" )->capture_default_str()->check( CLI::PositiveNumber );
        app->add_option( "--exhaustive-limit", p.exhaustive_limit, "enumerate selections exhaustively up to this many" )->capture_default_str();
        app->add_option( "--max-interval-width", p.max_interval_width, "widening of non-dominance intervals" )->capture_default_str()->check( CLI::NonNegativeNumber );
        if ( with_seed )
            app->add_option( "--seed", p.seed, "random seed for selection sampling" )->capture_default_str();
    }

    Precision get () const
    {
        Precision out = p;
        out.eps       = parse_epsilon( epsilon );
        out.check();
        return out;
    }
};

/// `bench --config FILE`: each "key = value" line becomes "--key value" right
/// after the subcommand. Keys also given on the command line are skipped.
std::vector<std::string> expand_config ( int argc, char ** argv )
{
    std::vector<std::string> args( argv, argv + argc );
    const auto bench = std::find( args.begin(), args.end(), "bench" );
    if ( bench == args.end() )
        return args;
    std::string path;
    for ( auto it = bench + 1; it != args.end(); ++it )
        if ( *it == "--config" && it + 1 != args.end() )
        {
            path = *( it + 1 );
            args.erase( it, it + 2 );
            break;
        }
        else if ( it->starts_with( "--config=" ) )
        {
            path = it->substr( 9 );
            args.erase( it );
            break;
        }
    if ( path.empty() )
        return args;

    std::ifstream in( path );
    if ( !in )
        throw MecError( "cannot open config " + path );
    std::vector<std::string> extra;
    std::string              line;
    for ( int number = 1; std::getline( in, line ); ++number )
    {
        auto trim = [] ( std::string t ) {
            const auto a = t.find_first_not_of( " \t\r" );
            return a == std::string::npos ? std::string{} : t.substr( a, t.find_last_not_of( " \t\r" ) - a + 1 );
        };
        line = trim( line );
        if ( line.empty() || line[0] == '#' )
            continue;
        const auto eq = line.find( '=' );
        if ( eq == std::string::npos || trim( line.substr( 0, eq ) ).empty() )
            throw ParseError( path, number, 1, "expected key=value" );
        const auto flag = "--" + trim( line.substr( 0, eq ) );
        if ( std::any_of( args.begin(), args.end(), [&] ( const std::string & a ) { return a == flag || a.starts_with( flag + "=" ); } ) )
            continue;
        extra.push_back( flag );
        extra.push_back( trim( line.substr( eq + 1 ) ) );
    }
    const auto at = std::find( args.begin(), args.end(), "bench" );
    args.insert( at + 1, extra.begin(), extra.end() );
    return args;
}

std::ofstream open_out ( const std::string & path )
{
    std::ofstream out( path, std::ios::binary );
    if ( !out )
        throw MecError( "cannot write " + path );
    return out;
}

/// Emit text either to the file or to stdout.
void emit ( const std::string & path, const std::string & text )
{
    if ( path.empty() || path == "-" )
        std::cout << text;
    else
        open_out( path ) << text;
}

int cmd_validate ( const std::string & file )
{
    std::ifstream in( file );
    if ( !in )
        throw MecError( "cannot open " + file );
    // lenient read so every row problem is reported, not just the first
    std::string header;
    std::getline( in, header );
    std::istringstream hs( header );
    int                n = 0, m = 0;
    if ( !( hs >> n >> m ) || n < 1 || m < 1 )
    {
        std::cout << file << ":1:1: header must be two positive integers \"n m\"\n";
        return 1;
    }
    std::vector<std::string> dense;
    for ( std::string line; std::getline( in, line ); )
    {
        if ( !line.empty() && line.back() == '\r' )
            line.pop_back();
        if ( line.empty() && int( dense.size() ) >= n )
            continue;
        dense.push_back( line );
    }
    auto d = validate( dense, m );
    if ( int( dense.size() ) != n )
        d.errors.insert( d.errors.begin(), "expected " + std::to_string( n ) + " rows, found " + std::to_string( dense.size() ) );
    if ( !d.ok() )
    {
        for ( const auto & e : d.errors )
            std::cout << file << ": " << e << '\n';
        return 1;
    }
    std::cout << "ok n=" << n << " m=" << m << " class=" << d.classification() << '\n';
    return 0;
}

std::string classification_of ( const FragmentMatrix & M )
{
    return classify( M ).classification();
}

void dump_cells ( const std::string & path, const FragmentMatrix & M, const Precision & prec )
{
    DpOptions opt;
    opt.collect_cells = true;
    const auto        rep = run_dp_pair( M, prec, opt );
    std::ostringstream out;
    out << "# joint cells, rows in standard order: a b c | a' b' c' | last_col last_col' | value\n";
    for ( const auto & c : rep.cells )
        out << c.cell_a.block.a << ' ' << c.cell_a.block.b << ' ' << c.cell_a.block.c << " | " << c.cell_b.block.a << ' '
            << c.cell_b.block.b << ' ' << c.cell_b.block.c << " | " << c.cell_a.block.last_col << ' ' << c.cell_b.block.last_col
            << " | " << c.value << '\n';
    out << "# states " << rep.states << ( rep.truncated ? " (truncated)" : "" ) << '\n';
    emit( path, out.str() );
}

}// namespace

int main ( int argc, char ** argv )
{
    CLI::App app{ "Gapless MEC solvers: exact oracles, sampling and DP approximations, benchmarks" };
    app.require_subcommand( 1 );
    app.set_help_all_flag( "--help-all", "expand all help" );

    // validate
    std::string validate_file;
    auto *      validate_cmd = app.add_subcommand( "validate", "check a .mec file and classify it" );
    validate_cmd->add_option( "file", validate_file, "instance" )->required();

    // gen
    GenSpec     gen;
    std::string gen_family = "swc", gen_out, gen_truth;
    auto *      gen_cmd    = app.add_subcommand( "gen", "generate a planted instance" );
    gen_cmd->add_option( "--family", gen_family, "binary|swc|subinterval-free|rooted|general|adversarial-density" )->capture_default_str();
    gen_cmd->add_option( "--n", gen.n, "rows" )->capture_default_str();
    gen_cmd->add_option( "--m", gen.m, "columns" )->capture_default_str();
    gen_cmd->add_option( "--flip-rate", gen.flip_rate, "per-entry flip probability" )->capture_default_str();
    gen_cmd->add_option( "--balance", gen.balance, "fraction of rows on haplotype A" )->capture_default_str();
    gen_cmd->add_option( "--seed", gen.seed, "seed" )->capture_default_str();
    gen_cmd->add_option( "--root", gen.root, "root column for the rooted family (0: middle)" )->capture_default_str();
    gen_cmd->add_option( "--out", gen_out, "output .mec path (stdout when omitted)" );
    gen_cmd->add_option( "--truth", gen_truth, "write the planted solution here" );

    // solve
    std::string    solve_file, solve_algo = "general", solve_out, solve_dump;
    int            solve_root = 0, solve_r = -1;
    bool           solve_json = false, solve_timings = false;
    PrecisionFlags solve_prec;
    auto *         solve_cmd = app.add_subcommand( "solve", "solve an instance" );
    solve_cmd->add_option( "file", solve_file, "instance" )->required();
    solve_cmd->add_option( "--algo", solve_algo, "algorithm" )->capture_default_str()->check( CLI::IsMember( algorithm_names() ) );
    solve_cmd->add_option( "--root", solve_root, "root column (rooted)" );
    solve_cmd->add_option( "--r", solve_r, "rows on sigma (exact-fixed)" );
    solve_cmd->add_option( "--out", solve_out, "write the solution here instead of stdout" );
    solve_cmd->add_option( "--dump-cells", solve_dump, "write the joint-cell audit log (dp-pair)" );
    solve_cmd->add_flag( "--json", solve_json, "machine-readable output" );
    solve_cmd->add_flag( "--timings", solve_timings, "include wall time in JSON output" );
    solve_prec.add( solve_cmd );

    // bench
    std::string              bench_suite_name = "default", bench_out, bench_summary;
    std::vector<std::string> bench_algos;
    int                      bench_seeds = 0, bench_jobs = 1;
    std::uint64_t            bench_seed = 1;
    bool                     bench_timings = false;
    PrecisionFlags           bench_prec;
    auto *                   bench_cmd = app.add_subcommand( "bench", "run a benchmark suite against the oracle" );
    std::string bench_config;
    bench_cmd->add_option( "--config", bench_config, "key=value file with any of these options (command line wins)" );
    bench_cmd->add_option( "--suite", bench_suite_name, "default|quick|gates" )->capture_default_str();
    bench_cmd->add_option( "--seed", bench_seed, "first instance seed, also the sampling seed" )->capture_default_str();
    bench_cmd->add_option( "--seeds", bench_seeds, "seeds per cell (0: suite default)" );
    bench_cmd->add_option( "--algos", bench_algos, "algorithms (default: per family)" )->delimiter( ',' )->check( CLI::IsMember( algorithm_names() ) );
    bench_cmd->add_option( "--jobs", bench_jobs, "concurrent cells" )->capture_default_str()->check( CLI::PositiveNumber );
    bench_cmd->add_option( "--out", bench_out, "CSV path (stdout when omitted)" );
    bench_cmd->add_option( "--summary", bench_summary, "summary CSV path (stderr when omitted)" );
    bench_cmd->add_flag( "--timings", bench_timings, "fill the ms column (output is then not reproducible)" );
    bench_prec.add( bench_cmd, false );

    // compare
    std::string              compare_file;
    std::vector<std::string> compare_algos{ "swc", "dp-pair", "general" };
    int                      compare_root = 0;
    bool                     compare_json = false;
    PrecisionFlags           compare_prec;
    auto *                   compare_cmd = app.add_subcommand( "compare", "run several algorithms on one instance" );
    compare_cmd->add_option( "file", compare_file, "instance" )->required();
    compare_cmd->add_option( "--algos", compare_algos, "algorithms" )->delimiter( ',' )->check( CLI::IsMember( algorithm_names() ) );
    compare_cmd->add_option( "--root", compare_root, "root column for rooted" );
    compare_cmd->add_flag( "--json", compare_json, "machine-readable output" );
    compare_prec.add( compare_cmd );

    // inspect
    std::string inspect_file;
    bool        inspect_classes = false, inspect_q = false;
    auto *      inspect_cmd = app.add_subcommand( "inspect", "show structure of an instance" );
    inspect_cmd->add_option( "file", inspect_file, "instance" )->required();
    inspect_cmd->add_flag( "--length-classes", inspect_classes, "print the length-class index" );
    inspect_cmd->add_flag( "--qsequence", inspect_q, "print the q-sequence (subinterval-free only)" );

    try
    {
        std::vector<std::string> args;
        try
        {
            args = expand_config( argc, argv );
        }
        catch ( const MecError & e )
        {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
        std::vector<char *> ptrs;
        for ( auto & a : args )
            ptrs.push_back( a.data() );
        app.parse( int( ptrs.size() ), ptrs.data() );
    }
    catch ( const CLI::CallForHelp & e )
    {
        return app.exit( e );
    }
    catch ( const CLI::CallForAllHelp & e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError & e )
    {
        app.exit( e );
        return 2;
    }

    try
    {
        if ( *validate_cmd )
            return cmd_validate( validate_file );

        if ( *gen_cmd )
        {
            gen.family   = parse_family( gen_family );
            const auto g = generate( gen );
            std::ostringstream mec;
            write_mec( mec, g.matrix );
            emit( gen_out, mec.str() );
            if ( !gen_truth.empty() )
            {
                std::ostringstream t;
                write_solution( t, g.planted );
                emit( gen_truth, t.str() );
            }
            return 0;
        }

        if ( *solve_cmd )
        {
            const auto   M = load_mec( solve_file );
            SolveRequest q;
            q.algo      = solve_algo;
            q.precision = solve_prec.get();
            q.root      = solve_root;
            q.r         = solve_r;
            if ( !solve_dump.empty() )
                dump_cells( solve_dump, M, q.precision );

            const auto t0  = std::chrono::steady_clock::now();
            SolutionPair sol;
            try
            {
                sol = run_algorithm( M, q );
            }
            catch ( const BudgetExceeded & )
            {
                throw;
            }
            catch ( const MecError & e )
            {
                throw MecError( std::string( e.what() ) + " (instance class: " + classification_of( M ) + ")" );
            }
            const double ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 ).count();

            std::ostringstream out;
            if ( solve_json )
            {
                json j        = to_json( sol );
                j["algo"]     = solve_algo;
                j["class"]    = classification_of( M );
                j["params"]   = describe( q.precision );
                j["n"]        = M.n();
                j["m"]        = M.m();
                if ( solve_timings )
                    j["ms"] = ms;
                out << j.dump( 2 ) << '\n';
            }
            else
                write_solution( out, sol );
            emit( solve_out, out.str() );
            return 0;
        }

        if ( *bench_cmd )
        {
            auto cfg      = named_suite( bench_suite_name );
            cfg.precision      = bench_prec.get();
            cfg.precision.seed = bench_seed;
            cfg.seed           = bench_seed;
            cfg.jobs      = bench_jobs;
            cfg.timings   = bench_timings;
            if ( bench_seeds > 0 )
                cfg.seeds = bench_seeds;
            if ( !bench_algos.empty() )
                cfg.algos = bench_algos;
            const auto rows = bench_suite( cfg );

            std::ostringstream csv, sum;
            write_csv( csv, rows, cfg.timings );
            write_summary( sum, summarize( rows ) );
            emit( bench_out, csv.str() );
            if ( bench_summary.empty() )
                std::cerr << sum.str();
            else
                emit( bench_summary, sum.str() );
            for ( const auto & r : rows )
                if ( !r.error.empty() )
                    std::cerr << "cell " << r.instance << " " << r.algo << " failed: " << r.error << '\n';
            return 0;
        }

        if ( *compare_cmd )
        {
            const auto          M = load_mec( compare_file );
            std::optional<long> opt;
            try
            {
                opt = exact_bipartition( M ).cost;
            }
            catch ( const BudgetExceeded & )
            {
            }
            json               rows = json::array();
            std::ostringstream out;
            out << "algo,cost,opt,ratio\n";
            int failures = 0;
            for ( const auto & a : compare_algos )
            {
                SolveRequest q;
                q.algo      = a;
                q.precision = compare_prec.get();
                q.root      = compare_root;
                BenchRow r;
                r.algo = a;
                r.opt  = opt;
                try
                {
                    r.cost = run_algorithm( M, q ).cost;
                }
                catch ( const MecError & e )
                {
                    r.error = e.what();
                    ++failures;
                }
                out << a << ',' << ( r.cost ? std::to_string( *r.cost ) : "" ) << ','
                    << ( opt ? std::to_string( *opt ) : "over-budget" ) << ',' << r.ratio_text() << '\n';
                json j{ { "algo", a }, { "ratio", r.ratio_text() } };
                j["cost"] = r.cost ? json( *r.cost ) : json();
                j["opt"]  = opt ? json( *opt ) : json();
                if ( !r.error.empty() )
                    j["error"] = r.error;
                rows.push_back( j );
            }
            if ( compare_json )
                std::cout << rows.dump( 2 ) << '\n';
            else
                std::cout << out.str();
            return failures == int( compare_algos.size() ) ? 1 : 0;
        }

        if ( *inspect_cmd )
        {
            const auto M = load_mec( inspect_file );
            std::cout << "n " << M.n() << "\nm " << M.m() << "\nclass " << classification_of( M ) << '\n';
            if ( inspect_classes )
            {
                const auto idx = build_index( M );
                std::cout << "padded " << idx.padded << '\n';
                std::cout << "level,lengths,rows,single,pair,columns\n";
                for ( const auto & c : idx.classes )
                {
                    std::ostringstream cols;
                    for ( std::size_t k = 0; k < c.columns.size(); ++k )
                        cols << ( k ? " " : "" ) << c.columns[k];
                    const long hi = idx.padded >> c.level;
                    std::cout << c.level << ",(" << hi / 2.0 << ";" << hi << "]," << c.rows.size() << ',' << c.single.size() << ','
                              << c.pair.size() << ',' << cols.str() << '\n';
                }
            }
            if ( inspect_q )
            {
                const auto q = build_qsequence( M );
                std::cout << "q";
                for ( int c : q.columns )
                    std::cout << ' ' << c;
                std::cout << '\n';
            }
            return 0;
        }
    }
    catch ( const std::exception & e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

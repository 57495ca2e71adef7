#include "swarmkit/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace swarmkit {

namespace {

std::string join_ids(const std::vector<int>& ids)
{
    if (ids.empty())
        return "-";
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(ids[i]);
    }
    return s;
}

long parse_long(std::string_view s)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::vector<int> parse_ids(std::string_view s)
{
    std::vector<int> out;
    if (s == "-")
        return out;
    for (auto part : split(s, ','))
        out.push_back(static_cast<int>(parse_long(part)));
    return out;
}

// "key=value" field; throws if the key differs.
std::string_view field(std::string_view tok, std::string_view key)
{
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
        throw ParseError("expected '" + std::string(key) + "=' in '" + std::string(tok) + "'");
    return tok.substr(key.size() + 1);
}

std::vector<std::string_view> tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string points_text(const std::vector<Point>& pts)
{
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            s += ' ';
        s += format_point(pts[i]);
    }
    return s;
}

} // namespace

std::string verdict_name(VerdictKind k)
{
    switch (k) {
    case VerdictKind::Reached:
        return "reached";
    case VerdictKind::HorizonExceeded:
        return "horizon";
    case VerdictKind::StasisDetected:
        return "stasis";
    }
    return "?";
}

Point parse_point(std::string_view text)
{
    auto t = text;
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t'))
        t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t'))
        t.remove_suffix(1);
    if (t.size() < 5 || t.front() != '[' || t.back() != ']')
        throw ParseError("malformed point '" + std::string(text) + "'");
    auto inner = t.substr(1, t.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos)
        throw ParseError("malformed point '" + std::string(text) + "'");
    return {parse_scalar(inner.substr(0, comma)), parse_scalar(inner.substr(comma + 1))};
}

std::vector<Point> parse_point_list(std::string_view text)
{
    std::vector<Point> out;
    std::size_t i = 0;
    while (i < text.size()) {
        auto open = text.find('[', i);
        if (open == std::string_view::npos) {
            for (; i < text.size(); ++i)
                if (text[i] != ' ' && text[i] != '\t' && text[i] != ',' && text[i] != '\r')
                    throw ParseError("stray text in point list: '" + std::string(text.substr(i)) + "'");
            break;
        }
        for (std::size_t k = i; k < open; ++k)
            if (text[k] != ' ' && text[k] != '\t' && text[k] != ',')
                throw ParseError("stray text in point list: '" + std::string(text.substr(i)) + "'");
        auto close = text.find(']', open);
        if (close == std::string_view::npos)
            throw ParseError("unterminated point in list");
        out.push_back(parse_point(text.substr(open, close - open + 1)));
        i = close + 1;
    }
    return out;
}

void write_trace(std::ostream& out, const ExecutionTrace& trace)
{
    out << "swarmkit-trace 1\n";
    out << "n " << trace.robots.size() << "\n";
    if (trace.pattern)
        out << "pattern " << points_text(trace.pattern->points()) << "\n";
    for (const auto& r : trace.robots) {
        out << "robot " << r.id << " tf=" << r.tf << " frame=" << format_scalar(r.cos) << "," << format_scalar(r.sin) << ","
            << format_scalar(r.scale) << " crash=" << (r.crashed_at ? std::to_string(*r.crashed_at) : "-") << "\n";
    }
    for (const auto& s : trace.steps) {
        out << "step " << s.time << " act=" << join_ids(s.activated) << " crashed=" << join_ids(s.crashed)
            << " lambda=" << s.lambda[0] << "," << s.lambda[1] << "," << s.lambda[2] << " pos=" << points_text(s.positions)
            << "\n";
    }
    out << "verdict " << verdict_name(trace.verdict.kind) << " t=" << trace.verdict.time
        << " stable=" << (trace.verdict.stable ? 1 : 0) << "\n";
}

ExecutionTrace read_trace(std::istream& in)
{
    ExecutionTrace trace;
    std::string line;
    if (!std::getline(in, line) || tokens(line).size() != 2 || tokens(line)[0] != "swarmkit-trace")
        throw ParseError("missing trace header");
    if (tokens(line)[1] != "1")
        throw ParseError("unsupported trace version " + std::string(tokens(line)[1]));
    long n = -1;
    bool have_verdict = false;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty())
            continue;
        try {
            if (tok[0] == "n" && tok.size() == 2) {
                n = parse_long(tok[1]);
            } else if (tok[0] == "pattern") {
                trace.pattern = Configuration(parse_point_list(std::string_view(line).substr(line.find("pattern") + 7)));
            } else if (tok[0] == "robot" && tok.size() == 5) {
                TraceRobot r;
                r.id = static_cast<int>(parse_long(tok[1]));
                r.tf = std::string(field(tok[2], "tf"));
                auto fr = split(field(tok[3], "frame"), ',');
                if (fr.size() != 3)
                    throw ParseError("frame needs cos,sin,scale");
                r.cos = parse_scalar(fr[0]);
                r.sin = parse_scalar(fr[1]);
                r.scale = parse_scalar(fr[2]);
                auto crash = field(tok[4], "crash");
                if (crash != "-")
                    r.crashed_at = parse_long(crash);
                trace.robots.push_back(std::move(r));
            } else if (tok[0] == "step" && tok.size() >= 5) {
                TraceStep s;
                s.time = parse_long(tok[1]);
                s.activated = parse_ids(field(tok[2], "act"));
                s.crashed = parse_ids(field(tok[3], "crashed"));
                auto lam = split(field(tok[4], "lambda"), ',');
                if (lam.size() != 3)
                    throw ParseError("lambda needs three entries");
                for (std::size_t i = 0; i < 3; ++i)
                    s.lambda[i] = parse_long(lam[i]);
                auto pos = line.find("pos=");
                if (pos == std::string::npos)
                    throw ParseError("step without positions");
                s.positions = parse_point_list(std::string_view(line).substr(pos + 4));
                if (n >= 0 && static_cast<long>(s.positions.size()) != n)
                    throw ParseError("step has " + std::to_string(s.positions.size()) + " positions, expected " +
                                     std::to_string(n));
                trace.steps.push_back(std::move(s));
            } else if (tok[0] == "verdict" && tok.size() == 4) {
                if (tok[1] == "reached")
                    trace.verdict.kind = VerdictKind::Reached;
                else if (tok[1] == "horizon")
                    trace.verdict.kind = VerdictKind::HorizonExceeded;
                else if (tok[1] == "stasis")
                    trace.verdict.kind = VerdictKind::StasisDetected;
                else
                    throw ParseError("unknown verdict '" + std::string(tok[1]) + "'");
                trace.verdict.time = parse_long(field(tok[2], "t"));
                trace.verdict.stable = field(tok[3], "stable") == "1";
                have_verdict = true;
            } else {
                throw ParseError("unrecognized record");
            }
        } catch (const ParseError& e) {
            throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (n < 0 || static_cast<long>(trace.robots.size()) != n)
        throw ParseError("trace robot count does not match header");
    if (!have_verdict)
        throw ParseError("trace has no verdict");
    return trace;
}

} // namespace swarmkit

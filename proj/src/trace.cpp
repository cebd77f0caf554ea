#include "kcgames/engine.hpp"

#include <sstream>

namespace kcg {

Player other(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }

const char *to_string(Player p) { return p == Player::Alice ? "alice" : "bob"; }

Player player_from_string(const std::string &s) {
    if (s == "alice") return Player::Alice;
    if (s == "bob") return Player::Bob;
    throw std::invalid_argument("unknown player: " + s);
}

std::string trace_to_text(const MatchTrace &trace) {
    std::string out;
    json header{{"schema", trace.schema},
                {"params", trace.params},
                {"seed", trace.seed},
                {"engine_version", trace.engine_version}};
    out += header.dump();
    out += '\n';
    for (const auto &move : trace.moves) {
        json rec{{"round", move.round}, {"player", to_string(move.player)}, {"payload", move.payload}};
        out += rec.dump();
        out += '\n';
    }
    json footer{{"outcome", to_string(trace.outcome)},
                {"certificate", trace.certificate},
                {"quiescent", trace.quiescent},
                {"rounds", trace.rounds}};
    out += footer.dump();
    out += '\n';
    return out;
}

namespace {

json parse_line(const std::string &line, int line_no) {
    json v = json::parse(line, nullptr, false);
    if (v.is_discarded() || !v.is_object())
        throw TraceParseError(line_no, "not a JSON object");
    return v;
}

template <typename T>
T field(const json &obj, const char *key, int line_no) {
    auto it = obj.find(key);
    if (it == obj.end()) throw TraceParseError(line_no, std::string("missing field ") + key);
    try {
        return it->get<T>();
    } catch (const json::exception &) {
        throw TraceParseError(line_no, std::string("bad field ") + key);
    }
}

} // namespace

MatchTrace trace_from_text(const std::string &text) {
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            lines.emplace_back(line_no, line);
        }
    }
    if (lines.size() < 2) throw TraceParseError(static_cast<int>(lines.size()), "truncated trace");

    MatchTrace trace;
    {
        const auto &[line_no, line] = lines.front();
        json header = parse_line(line, line_no);
        trace.schema = field<std::string>(header, "schema", line_no);
        auto p = header.find("params");
        if (p == header.end()) throw TraceParseError(line_no, "missing field params");
        trace.params = *p;
        trace.seed = field<std::uint64_t>(header, "seed", line_no);
        trace.engine_version = field<std::string>(header, "engine_version", line_no);
    }
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        const auto &[line_no, line] = lines[i];
        json rec = parse_line(line, line_no);
        MoveRecord move;
        move.round = field<int>(rec, "round", line_no);
        try {
            move.player = player_from_string(field<std::string>(rec, "player", line_no));
        } catch (const std::invalid_argument &e) {
            throw TraceParseError(line_no, e.what());
        }
        auto p = rec.find("payload");
        if (p == rec.end()) throw TraceParseError(line_no, "missing field payload");
        move.payload = *p;
        trace.moves.push_back(std::move(move));
    }
    {
        const auto &[line_no, line] = lines.back();
        json footer = parse_line(line, line_no);
        try {
            trace.outcome = player_from_string(field<std::string>(footer, "outcome", line_no));
        } catch (const std::invalid_argument &e) {
            throw TraceParseError(line_no, e.what());
        }
        auto c = footer.find("certificate");
        if (c == footer.end()) throw TraceParseError(line_no, "missing field certificate");
        trace.certificate = *c;
        trace.quiescent = field<bool>(footer, "quiescent", line_no);
        trace.rounds = field<int>(footer, "rounds", line_no);
    }
    return trace;
}

} // namespace kcg

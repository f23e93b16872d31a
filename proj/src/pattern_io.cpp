#include "ren/pattern_io.hpp"

#include "ren/errors.hpp"

#include <algorithm>
#include <cctype>
#include <climits>

namespace ren {

// ---- Pattern ----

Pattern::Pattern(int width, int height, std::vector<Cell> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    if (width < 0 || height < 0) throw contract_violation("pattern dimensions must be >= 0");
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    for (const auto& c : cells_) {
        if (c.row < 0 || c.row >= height || c.col < 0 || c.col >= width) {
            throw contract_violation("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                     ") outside the pattern's bounding box");
        }
    }
}

Pattern Pattern::from_grid(const Grid2D& grid) {
    std::vector<Cell> cells;
    int top = INT_MAX, left = INT_MAX, bottom = -1, right = -1;
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            if (!grid.get(r, c)) continue;
            cells.push_back({r, c});
            top = std::min(top, r), bottom = std::max(bottom, r);
            left = std::min(left, c), right = std::max(right, c);
        }
    }
    if (cells.empty()) return {};
    for (auto& c : cells) c.row -= top, c.col -= left;
    return Pattern(right - left + 1, bottom - top + 1, std::move(cells));
}

Grid2D Pattern::to_grid(int pad, Boundary boundary) const {
    Grid2D g(std::max(1, width_ + 2 * pad), std::max(1, height_ + 2 * pad), boundary);
    for (const auto& c : cells_) g.set(c.row + pad, c.col + pad, 1);
    return g;
}

// ---- RLE ----

namespace {

class RleReader {
public:
    explicit RleReader(std::string_view text) : text_(text) {}

    RleDocument read() {
        skip_comments_and_blank_lines();
        std::optional<int> width, height;
        std::optional<ExtendedRule> rule;
        if (pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'X')) read_header(width, height, rule);
        std::vector<Cell> cells = read_body(width, height);
        int w = width.value_or(0), h = height.value_or(0);
        if (!width || !height) {
            for (const auto& c : cells) w = std::max(w, c.col + 1), h = std::max(h, c.row + 1);
        }
        return {Pattern(w, h, std::move(cells)), rule};
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line_, column()); }

    int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') ++line_, line_start_ = pos_ + 1;
        ++pos_;
    }

    void skip_comments_and_blank_lines() {
        while (pos_ < text_.size()) {
            const std::size_t eol = std::min(text_.find('\n', pos_), text_.size());
            const std::string_view line = text_.substr(pos_, eol - pos_);
            const bool blank = std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
            if (!blank && line.front() != '#') return;
            pos_ = eol;
            if (pos_ < text_.size()) advance();
        }
    }

    void skip_spaces() {
        while (peek() == ' ' || peek() == '\t' || peek() == '\r') advance();
    }

    std::string read_key() {
        std::string key;
        while (std::isalpha(static_cast<unsigned char>(peek()))) key += static_cast<char>(std::tolower(peek())), advance();
        return key;
    }

    int read_int() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > INT_MAX) fail("number too large");
            advance();
        }
        return static_cast<int>(v);
    }

    void read_header(std::optional<int>& width, std::optional<int>& height, std::optional<ExtendedRule>& rule) {
        while (true) {
            skip_spaces();
            const std::string key = read_key();
            skip_spaces();
            if (peek() != '=') fail("expected '=' after '" + key + "' in RLE header");
            advance();
            skip_spaces();
            if (key == "x") {
                width = read_int();
            } else if (key == "y") {
                height = read_int();
            } else if (key == "rule") {
                const std::size_t start = pos_;
                const int col = column();
                while (pos_ < text_.size() && peek() != ',' && peek() != '\n' && peek() != '\r' && peek() != ' ') advance();
                try {
                    rule = parse_extended_code(text_.substr(start, pos_ - start));
                } catch (const parse_error& e) {
                    throw parse_error(std::string("bad rule in RLE header: ") + e.what(), line_, col);
                }
            } else {
                fail("unknown RLE header key '" + key + "'");
            }
            skip_spaces();
            if (peek() == ',') {
                advance();
                continue;
            }
            if (peek() == '\n') {
                advance();
                break;
            }
            if (peek() == '\0') break;
            fail(std::string("unexpected '") + peek() + "' in RLE header");
        }
        if (!width || !height) fail("RLE header must give both x and y");
    }

    std::vector<Cell> read_body(const std::optional<int>& width, const std::optional<int>& height) {
        std::vector<Cell> cells;
        int row = 0, col = 0;
        while (pos_ < text_.size()) {
            const char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            int count = 1;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                count = read_int();
                if (count == 0) fail("zero run count");
            }
            const char tag = peek();
            switch (tag) {
                case 'b':
                    col += count;
                    break;
                case 'o':
                    if (width && col + count > *width) fail("row exceeds declared width");
                    if (height && row >= *height) fail("rows exceed declared height");
                    for (int k = 0; k < count; ++k) cells.push_back({row, col + k});
                    col += count;
                    break;
                case '$':
                    row += count;
                    col = 0;
                    break;
                case '!':
                    advance();
                    return cells;
                case '\0':
                    fail("RLE body ends without '!'");
                default:
                    fail(std::string("unknown RLE symbol '") + tag + "'");
            }
            if (width && col > *width) fail("row exceeds declared width");
            advance();
        }
        fail("RLE body ends without '!'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

class WrappedWriter {
public:
    explicit WrappedWriter(std::string& out) : out_(out) {}

    void token(int count, char tag) {
        std::string t = count > 1 ? std::to_string(count) : std::string();
        t += tag;
        if (line_length_ + t.size() > 70) {
            out_ += '\n';
            line_length_ = 0;
        }
        out_ += t;
        line_length_ += t.size();
    }

private:
    std::string& out_;
    std::size_t line_length_ = 0;
};

}  // namespace

RleDocument parse_rle(std::string_view text) { return RleReader(text).read(); }

std::string emit_rle(const Pattern& pattern, const std::optional<ExtendedRule>& rule) {
    std::string out = "x = " + std::to_string(pattern.width()) + ", y = " + std::to_string(pattern.height());
    if (rule) {
        out += ", rule = " + base_code(rule->base, true);
        if (rule->radius != 1) out += "R" + std::to_string(rule->radius);
    }
    out += '\n';
    WrappedWriter w(out);
    const auto& cells = pattern.cells();
    int row = 0;
    std::size_t i = 0;
    while (i < cells.size()) {
        const int r = cells[i].row;
        if (r > row) w.token(r - row, '$');
        row = r;
        int col = 0;
        while (i < cells.size() && cells[i].row == r) {
            const int start = cells[i].col;
            int end = start;
            ++i;
            while (i < cells.size() && cells[i].row == r && cells[i].col == end + 1) ++end, ++i;
            if (start > col) w.token(start - col, 'b');
            w.token(end - start + 1, 'o');
            col = end + 1;
        }
    }
    w.token(1, '!');
    return out;
}

// ---- PBM / PPM ----

std::string render_pbm(const Grid2D& bitmap, PbmFormat format) {
    const int w = bitmap.width(), h = bitmap.height();
    std::string out = (format == PbmFormat::plain ? "P1\n" : "P4\n") + std::to_string(w) + " " + std::to_string(h) + "\n";
    for (int r = 0; r < h; ++r) {
        if (format == PbmFormat::plain) {
            for (int c = 0; c < w; ++c) {
                if (c) out += ' ';
                out += bitmap.get(r, c) ? '1' : '0';
            }
            out += '\n';
        } else {
            for (int c0 = 0; c0 < w; c0 += 8) {
                unsigned char byte = 0;
                for (int k = 0; k < 8 && c0 + k < w; ++k)
                    if (bitmap.get(r, c0 + k)) byte |= static_cast<unsigned char>(0x80 >> k);
                out += static_cast<char>(byte);
            }
        }
    }
    return out;
}

std::string render_pbm(const Grid1D& grid, PbmFormat format) { return render_pbm(space_time({grid}), format); }

Grid2D space_time(const std::vector<Grid1D>& history) {
    if (history.empty()) throw contract_violation("empty history");
    Grid2D img(history.front().width(), static_cast<int>(history.size()), Boundary::fixed_zero);
    for (std::size_t t = 0; t < history.size(); ++t) {
        if (history[t].width() != img.width()) throw contract_violation("history rows differ in width");
        const auto src = history[t].words();
        std::copy(src.begin(), src.end(), img.row_words(static_cast<int>(t)).begin());
    }
    return img;
}

Grid2D decode_pbm(std::string_view bytes) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&] {
        skip_ws();
        if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            throw parse_error("bad PBM header");
        }
        int v = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) v = v * 10 + (bytes[pos++] - '0');
        return v;
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) throw parse_error("not a PBM image");
    const bool plain = bytes[1] == '1';
    pos = 2;
    const int w = read_int(), h = read_int();
    Grid2D img(w, h, Boundary::fixed_zero);
    if (plain) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                skip_ws();
                if (pos >= bytes.size()) throw parse_error("truncated PBM data");
                const char ch = bytes[pos++];
                if (ch != '0' && ch != '1') throw parse_error("bad P1 pixel");
                img.set(r, c, ch == '1');
            }
        }
    } else {
        ++pos;  // single whitespace after the header
        const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
        if (bytes.size() < pos + stride * static_cast<std::size_t>(h)) throw parse_error("truncated PBM data");
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                const auto byte = static_cast<unsigned char>(bytes[pos + static_cast<std::size_t>(r) * stride + static_cast<std::size_t>(c / 8)]);
                img.set(r, c, (byte >> (7 - c % 8)) & 1);
            }
    }
    return img;
}

const std::vector<Rgb>& default_radius_palette() {
    static const std::vector<Rgb> palette = [] {
        std::vector<Rgb> p = {{0, 200, 0},   {255, 64, 64},  {64, 128, 255}, {255, 220, 0},
                              {255, 0, 255}, {0, 230, 230},  {255, 140, 0},  {255, 255, 255}};
        // Remaining entries walk the hue circle in 15-degree steps at full saturation.
        for (int k = 0; p.size() < 32; ++k) {
            const int hue = (k * 15 + 7) % 360;
            const int sector = hue / 60, f = (hue % 60) * 255 / 60;
            const auto up = static_cast<std::uint8_t>(f), down = static_cast<std::uint8_t>(255 - f);
            switch (sector) {
                case 0: p.push_back({255, up, 0}); break;
                case 1: p.push_back({down, 255, 0}); break;
                case 2: p.push_back({0, 255, up}); break;
                case 3: p.push_back({0, down, 255}); break;
                case 4: p.push_back({up, 0, 255}); break;
                default: p.push_back({255, 0, down}); break;
            }
        }
        return p;
    }();
    return palette;
}

std::string render_ppm_radius(const Grid2D& grid, const RadiusField& field, const std::vector<Rgb>& palette) {
    if (field.width() != grid.width() || field.height() != grid.height()) {
        throw contract_violation("radius field dimensions differ from the grid's");
    }
    if (static_cast<int>(palette.size()) < field.max_radius()) {
        throw range_error("palette has " + std::to_string(palette.size()) + " colors but the field reaches R = " +
                          std::to_string(field.max_radius()));
    }
    std::string out = "P6\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n255\n";
    out.reserve(out.size() + 3 * static_cast<std::size_t>(grid.width()) * static_cast<std::size_t>(grid.height()));
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            const Rgb color = grid.get(r, c) ? palette[static_cast<std::size_t>(field.at(r, c) - 1)] : Rgb{0, 0, 0};
            for (auto ch : color) out += static_cast<char>(ch);
        }
    }
    return out;
}

}  // namespace ren

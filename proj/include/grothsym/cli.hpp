#pragma once

// Command-line front end. The commands live in the library so they can be
// driven in-process (tests compare reports across thread counts).

#include <ostream>
#include <string>
#include <vector>

namespace grothsym::cli {

enum class Format { Canonical, Kv };

struct Field {
    std::string key;
    std::string value;
    bool bare = false; // canonical output shows the value only
};

// A report is a list of lines, each a list of fields. Canonical output prints
// a line as "key: value, key: value"; kv output prints one key=value per
// field, with spaces in keys replaced by dots.
class Report {
  public:
    void line(std::vector<Field> fields) { lines_.push_back(std::move(fields)); }
    void text(std::string key, std::string value) { lines_.push_back({{std::move(key), std::move(value), true}}); }

    std::string render(Format f) const;

  private:
    std::vector<std::vector<Field>> lines_;
};

// Exit codes: 0 success or query, 1 failed verification, 2 input error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace grothsym::cli

#include "mspec/prop.hpp"

#include <cctype>

namespace mspec {

PropKind guess_kind(const std::string& name) {
  auto digits_after = [&](size_t i) {
    if (i >= name.size()) return false;
    for (size_t j = i; j < name.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(name[j]))) return false;
    return true;
  };
  if (name.size() >= 2 && name[0] == 'l' && digits_after(1)) return PropKind::Location;
  if (name.size() >= 2 && name[0] == 'a' && digits_after(1)) return PropKind::Action;
  if (name.rfind("act", 0) == 0) return PropKind::Action;
  return PropKind::Condition;
}

Prop make_prop(const std::string& name) { return Prop{guess_kind(name), "", name}; }

Prop make_prop(PropKind kind, std::string name) {
  return Prop{kind, "", std::move(name)};
}

Prop make_prop(PropKind kind, std::string robot, std::string name) {
  return Prop{kind, std::move(robot), std::move(name)};
}

PropSet props_of(const std::string& names) {
  PropSet out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.insert(make_prop(cur));
    cur.clear();
  };
  for (char ch : names) {
    if (ch == ' ' || ch == ',' || ch == '\t') {
      flush();
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  return out;
}

}  // namespace mspec

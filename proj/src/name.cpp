#include "icn5g/name.hpp"

#include <ostream>

namespace icn5g {

static void
checkComponent(const std::string& component)
{
  if (component.empty()) {
    throw MalformedName("empty component");
  }
  if (component.find('/') != std::string::npos) {
    throw MalformedName("component contains '/': " + component);
  }
}

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  if (m_components.empty()) {
    throw MalformedName("name needs at least one component");
  }
  for (const auto& c : m_components) {
    checkComponent(c);
  }
}

Name::Name(std::initializer_list<std::string> components)
  : Name(std::vector<std::string>(components))
{
}

Name
Name::parse(const std::string& text)
{
  if (text.empty()) {
    throw MalformedName("empty text");
  }
  if (text.front() != '/') {
    throw MalformedName("missing leading '/': " + text);
  }
  std::vector<std::string> components;
  std::size_t pos = 1;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string::npos) {
      next = text.size();
    }
    components.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return Name(std::move(components)); // constructor rejects empty components
}

std::string
Name::toUri() const
{
  std::string uri;
  for (const auto& c : m_components) {
    uri += '/';
    uri += c;
  }
  return uri;
}

bool
Name::isPrefixOf(const Name& name) const
{
  if (m_components.size() > name.m_components.size()) {
    return false;
  }
  for (std::size_t i = 0; i < m_components.size(); ++i) {
    if (m_components[i] != name.m_components[i]) {
      return false;
    }
  }
  return true;
}

Name
Name::getPrefix(std::size_t n) const
{
  if (n > m_components.size()) {
    n = m_components.size();
  }
  return Name(std::vector<std::string>(m_components.begin(), m_components.begin() + n));
}

Name
Name::append(const std::string& component) const
{
  auto components = m_components;
  components.push_back(component);
  return Name(std::move(components));
}

bool
Name::operator<(const Name& other) const
{
  return m_components < other.m_components;
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

} // namespace icn5g

#ifndef ICN5G_NAME_HPP
#define ICN5G_NAME_HPP

#include "icn5g/common.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace icn5g {

/** Hierarchical content/service identifier.
 *
 *  A Name is a non-empty ordered list of non-empty components; the canonical
 *  textual form is "/" + components joined by "/". Components may not contain
 *  '/' so the canonical form round-trips through parse().
 */
class Name {
public:
  Name() = default;

  explicit Name(std::vector<std::string> components);

  Name(std::initializer_list<std::string> components);

  // Parses the canonical textual form. Throws MalformedName on empty text,
  // missing leading '/', or an empty component.
  static Name parse(const std::string& text);

  const std::vector<std::string>& components() const { return m_components; }

  std::size_t size() const { return m_components.size(); }

  bool empty() const { return m_components.empty(); }

  const std::string& at(std::size_t i) const { return m_components.at(i); }

  // Canonical textual form, e.g. "/traffic/monitor/seg1".
  std::string toUri() const;

  // True iff this name's components are a leading sublist of `name`'s.
  bool isPrefixOf(const Name& name) const;

  // First `n` components (n capped at size()).
  Name getPrefix(std::size_t n) const;

  Name append(const std::string& component) const;

  bool operator==(const Name& other) const { return m_components == other.m_components; }
  bool operator!=(const Name& other) const { return !(*this == other); }

  // Component-wise lexicographic order; a proper prefix sorts before any
  // extension of it, which matches canonical-string order since '/' is
  // below all component bytes we accept.
  bool operator<(const Name& other) const;

private:
  std::vector<std::string> m_components;
};

std::ostream& operator<<(std::ostream& os, const Name& name);

} // namespace icn5g

#endif // ICN5G_NAME_HPP

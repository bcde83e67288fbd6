#include "sdcert/scalars/tower.hpp"

namespace sdcert {

template class Tower<Rational>;
template class Tower<RatFunc>;
template class TowerElem<Rational>;
template class TowerElem<RatFunc>;

}  // namespace sdcert

package deep.nested.pkg;
class Deep {
}

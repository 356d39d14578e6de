/* outer /* inner */ int x;
int y; /* tail */

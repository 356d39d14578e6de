char q = '"';
String s = "it's";
int z = 3; // '"
